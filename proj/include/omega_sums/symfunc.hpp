#pragma once

// Elementary symmetric polynomials and the three logarithmic-derivative
// identities built on E(t) = prod (1 + t x_i) = sum e_k t^k.
//
// Scalar may be Rational, ExactValue or std::complex<double>; it must be
// constructible from long and support + - * / ==.

#include <span>
#include <vector>

#include "omega_sums/errors.hpp"

namespace omega_sums {

template <class Scalar>
struct IdentitySides {
    Scalar lhs;
    Scalar rhs;
};

/// [e_0, ..., e_n] by multiplying out prod (1 + t x_i) one factor at a time.
template <class Scalar>
std::vector<Scalar> elementary_symmetric(std::span<const Scalar> xs) {
    std::vector<Scalar> e(xs.size() + 1, Scalar(0L));
    e[0] = Scalar(1L);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * xs[i];
    }
    return e;
}

namespace detail {

template <class Scalar>
void require_not(std::span<const Scalar> xs, const Scalar& pole, const char* what) {
    for (const auto& x : xs)
        if (x == pole) throw SingularInputError(what);
}

/// sum_k k^power * sign^k * e_k
template <class Scalar>
Scalar weighted_coefficient_sum(std::span<const Scalar> xs, int power, bool alternating) {
    auto e = elementary_symmetric(xs);
    Scalar sum(0L);
    for (std::size_t k = 1; k < e.size(); ++k) {
        long w = static_cast<long>(k);
        if (power == 2) w *= static_cast<long>(k);
        if (alternating && k % 2 == 1) w = -w;
        sum += Scalar(w) * e[k];
    }
    return sum;
}

} // namespace detail

/// prod (1 - x_i) * sum x_i / (x_i - 1). Requires x_i != 1.
template <class Scalar>
Scalar product_side_main(std::span<const Scalar> xs) {
    detail::require_not(xs, Scalar(1L), "identity main: some x_i = 1");
    Scalar prod(1L), sum(0L);
    for (const auto& x : xs) {
        prod *= Scalar(1L) - x;
        sum += x / (x - Scalar(1L));
    }
    return prod * sum;
}

/// prod (1 + x_i) * sum x_i / (x_i + 1). Requires x_i != -1.
template <class Scalar>
Scalar product_side_mainpos(std::span<const Scalar> xs) {
    detail::require_not(xs, Scalar(-1L), "identity mainpos: some x_i = -1");
    Scalar prod(1L), sum(0L);
    for (const auto& x : xs) {
        prod *= Scalar(1L) + x;
        sum += x / (x + Scalar(1L));
    }
    return prod * sum;
}

/// prod (1 + x_i) * [ (sum x_i/(1+x_i))^2 + sum x_i/(1+x_i)^2 ]. Requires x_i != -1.
template <class Scalar>
Scalar product_side_second_order(std::span<const Scalar> xs) {
    detail::require_not(xs, Scalar(-1L), "second-order identity: some x_i = -1");
    Scalar prod(1L), first(0L), second(0L);
    for (const auto& x : xs) {
        Scalar one_plus = Scalar(1L) + x;
        prod *= one_plus;
        Scalar r = x / one_plus;
        first += r;
        second += r / one_plus;
    }
    return prod * (first * first + second);
}

/// lhs = prod (1 - x_i) sum x_i/(x_i - 1), rhs = sum_k (-1)^k k e_k.
template <class Scalar>
IdentitySides<Scalar> identity_main_sides(std::span<const Scalar> xs) {
    Scalar lhs = product_side_main(xs);
    return {lhs, detail::weighted_coefficient_sum(xs, 1, true)};
}

/// lhs = prod (1 + x_i) sum x_i/(x_i + 1), rhs = sum_k k e_k.
template <class Scalar>
IdentitySides<Scalar> identity_mainpos_sides(std::span<const Scalar> xs) {
    Scalar lhs = product_side_mainpos(xs);
    return {lhs, detail::weighted_coefficient_sum(xs, 1, false)};
}

/// lhs = sum_k k^2 e_k, rhs = the product form.
template <class Scalar>
IdentitySides<Scalar> identity_second_order_sides(std::span<const Scalar> xs) {
    Scalar rhs = product_side_second_order(xs);
    return {detail::weighted_coefficient_sum(xs, 2, false), rhs};
}

} // namespace omega_sums
