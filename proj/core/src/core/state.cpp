#include "nmf/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmf/errors.hpp"

namespace nmf {

namespace {

void require_finite(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError("state entry " + std::to_string(i) + " is not finite");
        }
    }
}

}  // namespace

StateVec::StateVec(std::size_t dim, double fill) : values_(dim, fill) {
    require_finite(values_);
}

StateVec::StateVec(std::vector<double> values) : values_(std::move(values)) {
    require_finite(values_);
}

StateVec::StateVec(std::initializer_list<double> values) : values_(values) {
    require_finite(values_);
}

bool StateVec::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

StateVec& StateVec::operator+=(const StateVec& other) {
    require_same_dim(*this, other, "addition");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

StateVec& StateVec::operator-=(const StateVec& other) {
    require_same_dim(*this, other, "subtraction");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

StateVec& StateVec::operator*=(double scale) noexcept {
    for (double& x : values_) x *= scale;
    return *this;
}

StateVec& StateVec::axpy(double scale, const StateVec& x) {
    require_same_dim(*this, x, "axpy");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += scale * x.values_[i];
    return *this;
}

std::string StateVec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) os << ", ";
        os << values_[i];
    }
    os << ']';
    return os.str();
}

StateVec operator+(StateVec lhs, const StateVec& rhs) { return lhs += rhs; }
StateVec operator-(StateVec lhs, const StateVec& rhs) { return lhs -= rhs; }
StateVec operator*(double scale, StateVec v) { return v *= scale; }

void require_same_dim(const StateVec& a, const StateVec& b, const char* context) {
    if (a.dim() != b.dim()) {
        throw ValidationError(std::string("dimension mismatch in ") + context + ": " +
                              std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

double max_abs_diff(const StateVec& a, const StateVec& b) {
    require_same_dim(a, b, "comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool approx_equal(const StateVec& a, const StateVec& b, double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

bool lex_less(const StateVec& a, const StateVec& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                        b.values().end());
}

}  // namespace nmf
