#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nmf {

/// Real vector state or observation in R^k.
///
/// Construction from raw values rejects NaN/Inf. Arithmetic requires equal
/// dimensions and throws ValidationError otherwise.
class StateVec {
public:
    StateVec() = default;
    explicit StateVec(std::size_t dim, double fill = 0.0);
    explicit StateVec(std::vector<double> values);
    StateVec(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& data() const noexcept { return values_; }

    bool all_finite() const noexcept;

    StateVec& operator+=(const StateVec& other);
    StateVec& operator-=(const StateVec& other);
    StateVec& operator*=(double scale) noexcept;

    /// this += scale * x
    StateVec& axpy(double scale, const StateVec& x);

    std::string to_string() const;

    friend bool operator==(const StateVec&, const StateVec&) = default;

private:
    std::vector<double> values_;
};

StateVec operator+(StateVec lhs, const StateVec& rhs);
StateVec operator-(StateVec lhs, const StateVec& rhs);
StateVec operator*(double scale, StateVec v);

/// Throws ValidationError("dimension mismatch ...") unless a and b agree.
void require_same_dim(const StateVec& a, const StateVec& b, const char* context);

double max_abs_diff(const StateVec& a, const StateVec& b);
bool approx_equal(const StateVec& a, const StateVec& b, double tol);

/// Lexicographic order on entries; shorter vectors first.
bool lex_less(const StateVec& a, const StateVec& b);

}  // namespace nmf
