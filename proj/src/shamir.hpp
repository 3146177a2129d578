#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"

namespace imgshare::shamir {

// Minimal field surface the sharing logic needs.
template <typename F>
concept FieldElement = requires(F a, F b, std::uint64_t v) {
  { F::zero() } -> std::same_as<F>;
  { F::one() } -> std::same_as<F>;
  { F::from_u64(v) } -> std::same_as<F>;
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a.inverse() } -> std::same_as<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
};

// One participant's piece: the pair (I, f(I)).
template <FieldElement F>
struct Share {
  F identifier;
  F value;
};

template <FieldElement F>
struct ReconstructResult {
  F secret;
  // True unless shares beyond the first t disagree with the polynomial
  // interpolated from those t.
  bool surplus_consistent = true;
};

// Horner evaluation of coefficients [a_0, a_1, ...] at x.
template <FieldElement F>
F eval_poly(std::span<const F> coefficients, F x) {
  F acc = F::zero();
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    acc = acc * x + coefficients[i];
  }
  return acc;
}

namespace detail {

template <FieldElement F>
void check_identifiers(std::span<const Share<F>> shares) {
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (shares[i].identifier.is_zero()) {
      raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "identifier must be nonzero");
    }
    for (std::size_t j = i + 1; j < shares.size(); ++j) {
      if (shares[i].identifier == shares[j].identifier) {
        raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "identifiers must be distinct");
      }
    }
  }
}

// Lagrange evaluation at an arbitrary point from the first t shares.
template <FieldElement F>
F lagrange_at(std::span<const Share<F>> shares, std::size_t t, F x) {
  F acc = F::zero();
  for (std::size_t i = 0; i < t; ++i) {
    F term = shares[i].value;
    for (std::size_t k = 0; k < t; ++k) {
      if (k == i) continue;
      F num = x - shares[k].identifier;
      F den = shares[i].identifier - shares[k].identifier;
      term = term * num * den.inverse();
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

// Degree-(t-1) polynomial with constant term `secret` and uniformly random
// higher coefficients.
template <FieldElement F>
std::vector<F> random_polynomial(F secret, std::size_t t, EntropySource &entropy) {
  std::vector<F> coefficients;
  coefficients.reserve(t);
  coefficients.push_back(secret);
  for (std::size_t i = 1; i < t; ++i) {
    coefficients.push_back(F::from_u64(entropy.next_u64()));
  }
  return coefficients;
}

// Produces one share per identifier from a fresh random polynomial f with
// f(0) = secret. Identifiers must be pairwise distinct and nonzero.
template <FieldElement F>
std::vector<Share<F>> split(F secret, std::size_t t, std::size_t n,
                            std::span<const F> identifiers, EntropySource &entropy) {
  if (t < 1 || t > n) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "threshold must satisfy 1 <= t <= n");
  }
  if (identifiers.size() != n) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "expected one identifier per participant");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (identifiers[i].is_zero()) {
      raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "identifier must be nonzero");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (identifiers[i] == identifiers[j]) {
        raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "identifiers must be distinct");
      }
    }
  }
  std::vector<F> poly = random_polynomial(secret, t, entropy);
  std::vector<Share<F>> shares;
  shares.reserve(n);
  for (const F &id : identifiers) {
    shares.push_back({id, eval_poly<F>(poly, id)});
  }
  return shares;
}

// Recovers f(0) by Lagrange interpolation through the first t shares.
// Surplus shares are checked against the interpolated polynomial.
template <FieldElement F>
ReconstructResult<F> reconstruct(std::span<const Share<F>> shares, std::size_t t) {
  if (t < 1) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "threshold must be at least 1");
  }
  if (shares.size() < t) {
    raise(IMGSHARE_ERROR_INSUFFICIENT_SHARES, "insufficient shares: need at least " +
                                                  std::to_string(t) + ", got " +
                                                  std::to_string(shares.size()));
  }
  detail::check_identifiers(shares);

  ReconstructResult<F> result;
  result.secret = detail::lagrange_at(shares, t, F::zero());
  for (std::size_t i = t; i < shares.size(); ++i) {
    F expected = detail::lagrange_at(shares, t, shares[i].identifier);
    if (!(expected == shares[i].value)) {
      result.surplus_consistent = false;
      break;
    }
  }
  return result;
}

// Solves the t x t Vandermonde system through the given points and returns
// the polynomial coefficients [a_0, ..., a_{t-1}]. Plain Gaussian
// elimination over the field.
template <FieldElement F>
std::vector<F> solve_vandermonde(std::span<const Share<F>> points) {
  const std::size_t t = points.size();
  if (t == 0) {
    raise(IMGSHARE_ERROR_INVALID_ARGUMENT, "empty interpolation system");
  }
  // Augmented matrix [V | values].
  std::vector<std::vector<F>> m(t, std::vector<F>(t + 1, F::zero()));
  for (std::size_t i = 0; i < t; ++i) {
    F power = F::one();
    for (std::size_t j = 0; j < t; ++j) {
      m[i][j] = power;
      power = power * points[i].identifier;
    }
    m[i][t] = points[i].value;
  }
  for (std::size_t col = 0; col < t; ++col) {
    std::size_t pivot = col;
    while (pivot < t && m[pivot][col].is_zero()) ++pivot;
    if (pivot == t) {
      // Unreachable with distinct evaluation points.
      raise(IMGSHARE_ERROR_INTERNAL, "singular interpolation system");
    }
    std::swap(m[col], m[pivot]);
    F inv = m[col][col].inverse();
    for (std::size_t j = col; j <= t; ++j) m[col][j] = m[col][j] * inv;
    for (std::size_t row = 0; row < t; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      F factor = m[row][col];
      for (std::size_t j = col; j <= t; ++j) {
        m[row][j] = m[row][j] - factor * m[col][j];
      }
    }
  }
  std::vector<F> coefficients(t);
  for (std::size_t i = 0; i < t; ++i) coefficients[i] = m[i][t];
  return coefficients;
}

// Same contract as reconstruct, via the linear system. Retained as an
// internal cross-check and exposed for tests.
template <FieldElement F>
F reconstruct_via_linear_system(std::span<const Share<F>> shares, std::size_t t) {
  if (shares.size() < t) {
    raise(IMGSHARE_ERROR_INSUFFICIENT_SHARES, "insufficient shares");
  }
  detail::check_identifiers(shares);
  return solve_vandermonde(shares.subspan(0, t))[0];
}

}  // namespace imgshare::shamir
