#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk::spectral {

TruncatedOperator::TruncatedOperator(int half_width, std::vector<OperatorEntry> entries)
    : half_width_(half_width),
      dim_(2 * (2 * static_cast<std::size_t>(half_width) + 1)),
      entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const OperatorEntry& l, const OperatorEntry& r) {
    return l.row != r.row ? l.row < r.row : l.col < r.col;
  });
  row_start_.assign(dim_ + 1, 0);
  for (const auto& e : entries_) {
    if (e.row >= dim_ || e.col >= dim_) throw DomainError("operator entry outside the matrix");
    ++row_start_[e.row + 1];
  }
  for (std::size_t r = 0; r < dim_; ++r) row_start_[r + 1] += row_start_[r];
}

Complex TruncatedOperator::entry(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw DomainError("operator index out of range");
  for (std::size_t k = row_start_[row]; k < row_start_[row + 1]; ++k) {
    if (entries_[k].col == col) return entries_[k].value;
  }
  return 0.0;
}

std::vector<Complex> TruncatedOperator::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw DomainError("vector length does not match operator dimension");
  std::vector<Complex> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc = 0.0;
    for (std::size_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      acc += entries_[k].value * v[entries_[k].col];
    }
    out[r] = acc;
  }
  return out;
}

std::vector<Complex> TruncatedOperator::dense() const {
  std::vector<Complex> m(dim_ * dim_);
  for (const auto& e : entries_) m[e.row * dim_ + e.col] = e.value;
  return m;
}

std::vector<Complex> to_interleaved(const WalkState& state) {
  std::vector<Complex> v;
  v.reserve(2 * state.size());
  for (const auto& s : state.sites()) {
    v.push_back(s.left);
    v.push_back(s.right);
  }
  return v;
}

WalkState from_interleaved(std::span<const Complex> v, int half_width, long time) {
  WalkState s(half_width, time);
  if (v.size() != 2 * s.size()) throw DomainError("vector length does not match lattice");
  for (int x = -half_width; x <= half_width; ++x) {
    s.set(x, {v[layout_index(half_width, x, 0)], v[layout_index(half_width, x, 1)]});
  }
  return s;
}

TruncatedOperator build_truncated_operator(const CoinField& field, int half_width) {
  if (half_width < 1) throw DomainError("truncated operator needs half-width >= 1");
  const int L = half_width;
  std::vector<OperatorEntry> entries;
  entries.reserve(8 * (2 * static_cast<std::size_t>(L) + 1));
  for (int x = -L; x <= L; ++x) {
    if (x + 1 <= L) {
      const Matrix2& u = field.coin_at(x + 1).matrix();
      const std::size_t row = layout_index(L, x, 0);
      entries.push_back({row, layout_index(L, x + 1, 0), u.a});
      entries.push_back({row, layout_index(L, x + 1, 1), u.b});
    }
    if (x - 1 >= -L) {
      const Matrix2& u = field.coin_at(x - 1).matrix();
      const std::size_t row = layout_index(L, x, 1);
      entries.push_back({row, layout_index(L, x - 1, 0), u.c});
      entries.push_back({row, layout_index(L, x - 1, 1), u.d});
    }
  }
  return TruncatedOperator(L, std::move(entries));
}

long overflow_cap(const wojcik::StationarySolution& sol) {
  const double decades = std::abs(std::log10(sol.theta_s_abs_sq));
  if (decades == 0.0) return std::numeric_limits<long>::max();
  const double cap = std::floor(600.0 / decades);
  return cap >= static_cast<double>(std::numeric_limits<long>::max())
             ? std::numeric_limits<long>::max()
             : static_cast<long>(cap);
}

double stationarity_residual(const TruncatedOperator& op, std::span<const Complex> psi,
                             Complex lambda, int margin) {
  const int L = op.half_width();
  if (margin < 1) throw DomainError("margin must be >= 1");
  if (L <= margin + 1) throw DomainError("half-width must exceed margin + 1");
  const auto image = op.apply(psi);

  double worst = 0.0;
  for (int x = -(L - margin); x <= L - margin; ++x) {
    const std::size_t i = layout_index(L, x, 0);
    const std::size_t j = layout_index(L, x, 1);
    const double diff = std::hypot(std::abs(image[i] - lambda * psi[i]),
                                   std::abs(image[j] - lambda * psi[j]));
    const double scale = std::max(std::hypot(std::abs(psi[i]), std::abs(psi[j])), 1e-300);
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

double stationarity_residual(const wojcik::StationarySolution& sol, const CoinField& field,
                             int half_width, int margin) {
  if (field.phase() != sol.phase) {
    throw DomainError("coin field is not the Wojcik field at the solution's phase");
  }
  const long cap = overflow_cap(sol);
  if (half_width > cap) {
    throw OverflowCapError("half-width " + std::to_string(half_width) +
                               " exceeds the overflow cap " + std::to_string(cap),
                           cap);
  }
  const auto op = build_truncated_operator(field, half_width);
  std::vector<Complex> psi(op.dim());
  for (int x = -half_width; x <= half_width; ++x) {
    const Amplitude a = wojcik::stationary_amplitude(sol, x);
    psi[layout_index(half_width, x, 0)] = a.left;
    psi[layout_index(half_width, x, 1)] = a.right;
  }
  return stationarity_residual(op, psi, sol.lambda, margin);
}

double decay_fit(const Measure& m) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int x = 1; x <= m.half_width && m.at(x) > 0.0; ++x) {
    xs.push_back(x);
    ys.push_back(std::log(m.at(x)));
  }
  if (xs.size() < 4) {
    throw InsufficientDataError("decay_fit needs at least 4 positive entries on x >= 1, got " +
                                std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  return std::exp(sxy / sxx);
}

}  // namespace qwalk::spectral
