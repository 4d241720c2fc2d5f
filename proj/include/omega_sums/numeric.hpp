#pragma once

// Shared floating-point plumbing for the Dirichlet-series side: the complex
// argument type, result record, error-tracked values, and reproducible
// reductions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

namespace omega_sums {

using Complex = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// s = sigma + i t.
struct ComplexS {
    double sigma = 2.0;
    double t = 0.0;

    ComplexS() = default;
    ComplexS(double sigma_, double t_ = 0.0) : sigma(sigma_), t(t_) {}  // NOLINT
    ComplexS(Complex z) : sigma(z.real()), t(z.imag()) {}               // NOLINT

    Complex value() const { return {sigma, t}; }
    bool is_real() const { return t == 0.0; }
};

struct SeriesResult {
    Complex value;
    /// Last n (or prime limit) included in the finite part.
    std::uint64_t truncation = 0;
    /// Estimated bound on |value - exact|.
    double tail_bound = 0.0;
    bool converged = true;
    /// True when tail_bound is an extrapolation rather than a proven bound.
    bool heuristic = false;
};

/// A complex value with an absolute error bound; arithmetic propagates the
/// bound to first order plus the product of the two bounds.
struct Approx {
    Complex value;
    double error = 0.0;

    Approx() = default;
    Approx(Complex v, double e = 0.0) : value(v), error(e) {}  // NOLINT

    friend Approx operator+(const Approx& a, const Approx& b) {
        Complex v = a.value + b.value;
        return {v, a.error + b.error + kEps * std::abs(v)};
    }
    friend Approx operator-(const Approx& a, const Approx& b) {
        Complex v = a.value - b.value;
        return {v, a.error + b.error + kEps * std::abs(v)};
    }
    friend Approx operator-(const Approx& a) { return {-a.value, a.error}; }
    friend Approx operator*(const Approx& a, const Approx& b) {
        Complex v = a.value * b.value;
        return {v, std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error +
                       2 * kEps * std::abs(v)};
    }
    friend Approx operator/(const Approx& a, const Approx& b) {
        double denom = std::abs(b.value) - b.error;
        Complex v = a.value / b.value;
        if (denom <= 0) return {v, std::numeric_limits<double>::infinity()};
        return {v, (a.error + std::abs(v) * b.error) / denom + 2 * kEps * std::abs(v)};
    }
    friend Approx operator*(double c, const Approx& a) { return {c * a.value, std::abs(c) * a.error}; }
};

inline SeriesResult to_result(const Approx& a, std::uint64_t truncation, bool heuristic = false) {
    return {a.value, truncation, a.error, std::isfinite(a.error), heuristic};
}

/// Pairwise (tree) summation in a fixed order.
template <class T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.empty()) return T{};
    if (xs.size() <= 8) {
        T s = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) s = s + xs[i];
        return s;
    }
    std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

/// Reduces chunk_fn over [begin, end) split into fixed-size chunks. Chunk
/// boundaries and the final tree reduction depend only on the range, never
/// on the worker count, so results are bit-identical for any `workers`.
template <class T, class ChunkFn>
T deterministic_reduce(std::uint64_t begin, std::uint64_t end, ChunkFn chunk_fn, unsigned workers = 1,
                       std::uint64_t chunk = 1u << 14) {
    if (end <= begin) return T{};
    const std::uint64_t n_chunks = (end - begin + chunk - 1) / chunk;
    std::vector<T> partial(n_chunks);
    auto work = [&](std::uint64_t c) {
        std::uint64_t b = begin + c * chunk;
        partial[c] = chunk_fn(b, std::min(end, b + chunk));
    };
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n_chunks)));
    if (workers == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) work(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < n_chunks; c = next++) work(c);
            });
        for (auto& t : pool) t.join();
    }
    return pairwise_sum(std::span<const T>(partial));
}

/// Principal log(1 + z) without cancellation for small |z|.
inline Complex log1p_complex(Complex z) {
    double x = z.real(), y = z.imag();
    return {0.5 * std::log1p(2 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

/// p^-s for integer p > 0.
inline Complex int_pow_neg(std::uint64_t p, Complex s) {
    if (s.imag() == 0.0) return std::pow(static_cast<double>(p), -s.real());
    return std::exp(-s * std::log(static_cast<double>(p)));
}

} // namespace omega_sums
