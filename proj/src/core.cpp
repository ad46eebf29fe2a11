#include "qwalk/core.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qwalk/errors.hpp"

namespace qwalk {

bool is_unitary(const Matrix2& m, double tol) {
  const Matrix2 g = m.adjoint() * m;
  return std::abs(g.a - 1.0) <= tol && std::abs(g.b) <= tol && std::abs(g.c) <= tol &&
         std::abs(g.d - 1.0) <= tol;
}

Coin::Coin(const Matrix2& m) : m_(m) {
  if (!is_unitary(m_)) throw DomainError("coin matrix is not unitary within 1e-12");
}

Coin Coin::hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return Coin({h, h, h, -h});
}

Coin Coin::identity() { return Coin({1.0, 0.0, 0.0, 1.0}); }

CoinSplit split_coin(const Coin& u) {
  const Matrix2& m = u.matrix();
  return {{m.a, m.b, 0.0, 0.0}, {0.0, 0.0, m.c, m.d}};
}

CoinField CoinField::wojcik(double phi) {
  require_open_unit_phase(phi);
  const Coin h = Coin::hadamard();
  return CoinField(h, h.times_phase(unit_phase(phi)), phi, {});
}

CoinField CoinField::homogeneous(const Coin& bulk) { return CoinField(bulk, bulk, std::nullopt, {}); }

CoinField CoinField::one_defect(const Coin& bulk, const Coin& defect) {
  return CoinField(bulk, defect, std::nullopt, {});
}

CoinField CoinField::with_sites(const Coin& bulk, std::map<int, Coin> sites) {
  auto origin = sites.find(0);
  const Coin defect = origin == sites.end() ? bulk : origin->second;
  return CoinField(bulk, defect, std::nullopt, std::move(sites));
}

const Coin& CoinField::coin_at(int x) const {
  if (!sites_.empty()) {
    auto it = sites_.find(x);
    if (it != sites_.end()) return it->second;
  }
  return x == 0 ? defect_ : bulk_;
}

WalkState::WalkState(int half_width, long time) : half_width_(half_width), time_(time) {
  if (half_width < 1) throw DomainError("lattice half-width must be >= 1");
  if (time < 0) throw DomainError("time index must be >= 0");
  sites_.assign(2 * static_cast<std::size_t>(half_width) + 1, Amplitude{});
}

WalkState WalkState::localized(int half_width, const Amplitude& origin) {
  WalkState s(half_width);
  s.set(0, origin);
  return s;
}

void WalkState::set(int x, const Amplitude& v) {
  if (!contains(x)) throw DomainError("site " + std::to_string(x) + " outside the lattice");
  sites_[index(x)] = v;
}

namespace {

std::vector<Matrix2> coins_over(const CoinField& field, int half_width) {
  std::vector<Matrix2> coins;
  coins.reserve(2 * static_cast<std::size_t>(half_width) + 1);
  for (int x = -half_width; x <= half_width; ++x) coins.push_back(field.coin_at(x).matrix());
  return coins;
}

// out[i] = P_{i+1} in[i+1] + Q_{i-1} in[i-1] on index space 0..n-1.
void apply_step(std::span<const Amplitude> in, std::span<Amplitude> out,
                std::span<const Matrix2> coins) {
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    Amplitude v;
    if (i + 1 < n) {
      const Matrix2& u = coins[i + 1];
      v.left = u.a * in[i + 1].left + u.b * in[i + 1].right;
    }
    if (i > 0) {
      const Matrix2& u = coins[i - 1];
      v.right = u.c * in[i - 1].left + u.d * in[i - 1].right;
    }
    out[i] = v;
  }
}

double sum_weights(std::span<const Amplitude> sites) {
  double total = 0.0;
  for (const auto& s : sites) total += s.weight();
  return total;
}

bool leaks(std::span<const Amplitude> sites) {
  const std::size_t n = sites.size();
  double edge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 2 || i + 2 >= n) edge += sites[i].weight();
  }
  return edge > kBoundaryLeakThreshold * sum_weights(sites);
}

}  // namespace

WalkState step(const WalkState& state, const CoinField& field) {
  return evolve(state, field, 1);
}

WalkState evolve(const WalkState& state, const CoinField& field, long n) {
  if (n < 0) throw DomainError("number of steps must be >= 0");
  if (n == 0) return state;

  const auto coins = coins_over(field, state.half_width());
  WalkState cur = state;
  WalkState next(state.half_width());
  for (long k = 0; k < n; ++k) {
    apply_step(cur.sites_, next.sites_, coins);
    next.time_ = cur.time_ + 1;
    next.boundary_leak_ = cur.boundary_leak_ || leaks(next.sites_);
    std::swap(cur, next);
  }
  return cur;
}

Measure measure(const WalkState& state) {
  Measure m{state.half_width(), {}};
  m.values.reserve(state.size());
  for (const auto& s : state.sites()) m.values.push_back(s.weight());
  return m;
}

double total_norm(const WalkState& state) { return sum_weights(state.sites()); }

Measure time_averaged_measure(const WalkState& init, const CoinField& field, long horizon) {
  if (horizon < 1) throw DomainError("horizon T must be >= 1");

  Measure avg = measure(init);
  WalkState cur = init;
  for (long n = 1; n < horizon; ++n) {
    cur = step(cur, field);
    if (cur.boundary_leak()) {
      throw BoundaryLeakError("weight reached the lattice edge at step " + std::to_string(n) +
                              "; increase the half-width beyond the horizon");
    }
    const auto sites = cur.sites();
    for (std::size_t i = 0; i < sites.size(); ++i) avg.values[i] += sites[i].weight();
  }
  const double inv = 1.0 / static_cast<double>(horizon);
  for (auto& v : avg.values) v *= inv;
  return avg;
}

}  // namespace qwalk
