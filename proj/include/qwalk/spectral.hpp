#pragma once

// Explicit truncated evolution operator on [-L, L] and residual checks of the
// analytic eigenpairs against it.
//
// State vectors use the interleaved layout
//   [psi^L(-L), psi^R(-L), psi^L(-L+1), psi^R(-L+1), ..., psi^L(L), psi^R(L)].
// Block row x holds P_{x+1} at block column x+1 and Q_{x-1} at block column x-1;
// blocks that would reference |x| > L are dropped.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/wojcik.hpp"

namespace qwalk::spectral {

struct OperatorEntry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

class TruncatedOperator {
 public:
  TruncatedOperator(int half_width, std::vector<OperatorEntry> entries);

  int half_width() const { return half_width_; }
  std::size_t dim() const { return dim_; }
  // Row-major, columns ascending within a row.
  std::span<const OperatorEntry> entries() const { return entries_; }

  Complex entry(std::size_t row, std::size_t col) const;
  std::vector<Complex> apply(std::span<const Complex> v) const;
  // Row-major dim x dim copy; meant for small L.
  std::vector<Complex> dense() const;

 private:
  int half_width_;
  std::size_t dim_;
  std::vector<OperatorEntry> entries_;
  std::vector<std::size_t> row_start_;
};

// Index of (x, chirality) in the interleaved layout; chirality 0 = L, 1 = R.
constexpr std::size_t layout_index(int half_width, int x, int chirality) {
  return 2 * static_cast<std::size_t>(x + half_width) + static_cast<std::size_t>(chirality);
}

std::vector<Complex> to_interleaved(const WalkState& state);
WalkState from_interleaved(std::span<const Complex> v, int half_width, long time = 0);

TruncatedOperator build_truncated_operator(const CoinField& field, int half_width);

// Largest L for which |theta_s|^(2L) stays inside double range:
// floor(600 / |log10 |theta_s|^2|), unbounded for |theta_s| = 1.
long overflow_cap(const wojcik::StationarySolution& sol);

// Max over |x| <= L - margin of |(U psi)(x) - lambda psi(x)| / max(|psi(x)|, 1e-300),
// psi taken from the closed form. `field` must be the Wojcik field at sol.phase.
double stationarity_residual(const wojcik::StationarySolution& sol, const CoinField& field,
                             int half_width, int margin);

// Overload taking an explicit eigenvector candidate (interleaved on [-L, L]) and eigenvalue.
double stationarity_residual(const TruncatedOperator& op, std::span<const Complex> psi,
                             Complex lambda, int margin);

// exp of the least-squares slope of log mu(x) over x = 1..x_max, where x_max is the
// end of the leading run of strictly positive entries.
double decay_fit(const Measure& m);

}  // namespace qwalk::spectral
