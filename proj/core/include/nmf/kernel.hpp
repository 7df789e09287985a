#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nmf {

inline constexpr double kInvertibleHead = 1e-9;
inline constexpr std::size_t kDefaultTruncation = 64;

/// Auxiliary sequence {w_tau} driving a convolution HAS.
///
/// Two forms: a finite band (w_0..w_{b-1}, zero afterwards) or a geometric
/// series w_tau = first * ratio^tau with |ratio| <= 1. A band obtained by
/// cutting an infinite series carries the cut length in truncated_at().
class Kernel {
public:
    enum class Form { band, geometric };

    static Kernel band(std::vector<double> coefficients, std::optional<std::size_t> truncated_at = std::nullopt);
    static Kernel geometric(double first, double ratio);
    static Kernel identity() { return band({1.0}); }

    Form form() const noexcept { return form_; }
    bool is_band() const noexcept { return form_ == Form::band; }
    bool is_geometric() const noexcept { return form_ == Form::geometric; }

    double head() const noexcept { return is_band() ? coefficients_.front() : first_; }
    bool invertible() const noexcept;
    /// Throws NonInvertibleKernelError when |w_0| < 1e-9.
    void require_invertible() const;

    double coefficient(std::size_t tau) const;
    /// w_0 .. w_{count-1}, zero-padded for bands.
    std::vector<double> coefficients(std::size_t count) const;

    // Band form only.
    std::span<const double> band_coefficients() const;
    std::size_t band_length() const;
    std::optional<std::size_t> truncated_at() const noexcept { return truncated_at_; }

    // Geometric form only.
    double first() const;
    double ratio() const;

    std::string to_string() const;

private:
    Kernel() = default;

    Form form_ = Form::band;
    std::vector<double> coefficients_;
    double first_ = 1.0;
    double ratio_ = 0.0;
    std::optional<std::size_t> truncated_at_;
};

/// First `length` coefficients of the first row of w^{-1}, i.e. the power
/// series inverse of the kernel. Throws NonInvertibleKernelError.
std::vector<double> invert_kernel(const Kernel& w, std::size_t length);

/// Discrete convolution of two kernels. Band x band is exact. When a geometric
/// kernel is involved, both are expanded to `truncation` terms and the result
/// is a band of that length marked as truncated.
Kernel compose_kernels(const Kernel& a, const Kernel& b, std::size_t truncation = kDefaultTruncation);

}  // namespace nmf
