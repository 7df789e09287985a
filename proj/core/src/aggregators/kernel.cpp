#include "nmf/kernel.hpp"

#include <cmath>
#include <sstream>

#include "nmf/errors.hpp"
#include "nmf/text.hpp"

namespace nmf {

Kernel Kernel::band(std::vector<double> coefficients, std::optional<std::size_t> truncated_at) {
    if (coefficients.empty()) throw ValidationError("band kernel needs at least one coefficient");
    for (double w : coefficients) {
        if (!std::isfinite(w)) throw ValidationError("kernel coefficients must be finite");
    }
    Kernel k;
    k.form_ = Form::band;
    k.coefficients_ = std::move(coefficients);
    k.truncated_at_ = truncated_at;
    return k;
}

Kernel Kernel::geometric(double first, double ratio) {
    if (!std::isfinite(first) || !std::isfinite(ratio)) throw ValidationError("geometric kernel must be finite");
    if (std::abs(ratio) > 1.0) throw ValidationError("geometric kernel needs |ratio| <= 1");
    Kernel k;
    k.form_ = Form::geometric;
    k.first_ = first;
    k.ratio_ = ratio;
    return k;
}

bool Kernel::invertible() const noexcept { return std::abs(head()) >= kInvertibleHead; }

void Kernel::require_invertible() const {
    if (!invertible()) throw NonInvertibleKernelError(head());
}

double Kernel::coefficient(std::size_t tau) const {
    if (is_band()) return tau < coefficients_.size() ? coefficients_[tau] : 0.0;
    double w = first_;
    for (std::size_t i = 0; i < tau; ++i) w *= ratio_;
    return w;
}

std::vector<double> Kernel::coefficients(std::size_t count) const {
    std::vector<double> out(count, 0.0);
    if (is_band()) {
        for (std::size_t i = 0; i < count && i < coefficients_.size(); ++i) out[i] = coefficients_[i];
        return out;
    }
    double w = first_;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = w;
        w *= ratio_;
    }
    return out;
}

std::span<const double> Kernel::band_coefficients() const {
    if (!is_band()) throw ValidationError("band_coefficients() on a geometric kernel");
    return coefficients_;
}

std::size_t Kernel::band_length() const {
    if (!is_band()) throw ValidationError("band_length() on a geometric kernel");
    return coefficients_.size();
}

double Kernel::first() const {
    if (!is_geometric()) throw ValidationError("first() on a band kernel");
    return first_;
}

double Kernel::ratio() const {
    if (!is_geometric()) throw ValidationError("ratio() on a band kernel");
    return ratio_;
}

std::string Kernel::to_string() const {
    std::ostringstream os;
    if (is_geometric()) {
        os << "geometric(" << format_shortest(first_) << ", " << format_shortest(ratio_) << ")";
        return os.str();
    }
    os << "band(";
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (i) os << ", ";
        os << format_shortest(coefficients_[i]);
    }
    os << ")";
    if (truncated_at_) os << "[truncated at " << *truncated_at_ << "]";
    return os.str();
}

std::vector<double> invert_kernel(const Kernel& w, std::size_t length) {
    if (length == 0) throw ValidationError("invert_kernel: length must be >= 1");
    w.require_invertible();
    const std::vector<double> coeff = w.coefficients(length);
    const double inv_head = 1.0 / coeff[0];
    std::vector<double> c(length, 0.0);
    c[0] = inv_head;
    for (std::size_t n = 1; n < length; ++n) {
        double acc = 0.0;
        for (std::size_t tau = 1; tau <= n; ++tau) acc += coeff[tau] * c[n - tau];
        c[n] = -inv_head * acc;
    }
    return c;
}

Kernel compose_kernels(const Kernel& a, const Kernel& b, std::size_t truncation) {
    if (a.is_band() && b.is_band()) {
        const auto x = a.band_coefficients();
        const auto y = b.band_coefficients();
        std::vector<double> out(x.size() + y.size() - 1, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
        }
        std::optional<std::size_t> cut;
        if (a.truncated_at() || b.truncated_at()) {
            cut = std::min(a.truncated_at().value_or(out.size()), b.truncated_at().value_or(out.size()));
            out.resize(std::min(out.size(), *cut));
        }
        return Kernel::band(std::move(out), cut);
    }
    if (truncation == 0) throw ValidationError("compose_kernels: truncation must be >= 1");
    std::size_t cut = truncation;
    if (a.truncated_at()) cut = std::min(cut, *a.truncated_at());
    if (b.truncated_at()) cut = std::min(cut, *b.truncated_at());
    const std::vector<double> x = a.coefficients(cut);
    const std::vector<double> y = b.coefficients(cut);
    std::vector<double> out(cut, 0.0);
    for (std::size_t n = 0; n < cut; ++n) {
        for (std::size_t i = 0; i <= n; ++i) out[n] += x[i] * y[n - i];
    }
    return Kernel::band(std::move(out), cut);
}

}  // namespace nmf
