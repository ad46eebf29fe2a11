#pragma once

// Space-inhomogeneous two-state quantum walk on a truncated integer line.
//
// Lattice sites x run over [-L, L]. Each site carries a two-component amplitude
// (left, right). One step applies
//
//   psi'(x) = P_{x+1} psi(x+1) + Q_{x-1} psi(x-1)
//
// where P_x (Q_x) keeps the top (bottom) row of the local coin U_x. Amplitudes
// outside [-L, L] are hard zero; a step that leaves weight on the two outermost
// sites on either side raises the boundary_leak flag.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qwalk/phase.hpp"

namespace qwalk {

struct Amplitude {
  Complex left{};
  Complex right{};

  double weight() const { return std::norm(left) + std::norm(right); }

  friend Amplitude operator+(const Amplitude& u, const Amplitude& v) {
    return {u.left + v.left, u.right + v.right};
  }
  friend Amplitude operator*(Complex s, const Amplitude& v) { return {s * v.left, s * v.right}; }
  friend bool operator==(const Amplitude&, const Amplitude&) = default;
};

// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Matrix2 {
  Complex a{};
  Complex b{};
  Complex c{};
  Complex d{};

  Amplitude operator*(const Amplitude& v) const {
    return {a * v.left + b * v.right, c * v.left + d * v.right};
  }
  friend Matrix2 operator+(const Matrix2& m, const Matrix2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
  }
  friend Matrix2 operator*(Complex s, const Matrix2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;

  Matrix2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  Matrix2 operator*(const Matrix2& n) const {
    return {a * n.a + b * n.c, a * n.b + b * n.d, c * n.a + d * n.c, c * n.b + d * n.d};
  }
  Complex det() const { return a * d - b * c; }
};

inline constexpr double kUnitaryTolerance = 1e-12;

// A 2x2 unitary coin. Construction validates U^dagger U = I entrywise.
class Coin {
 public:
  explicit Coin(const Matrix2& m);

  static Coin hadamard();
  static Coin identity();

  const Matrix2& matrix() const { return m_; }
  Coin times_phase(Complex phase) const { return Coin(phase * m_); }

  friend bool operator==(const Coin&, const Coin&) = default;

 private:
  Matrix2 m_;
};

bool is_unitary(const Matrix2& m, double tol = kUnitaryTolerance);

// P keeps the top row (left mover), Q the bottom row (right mover).
struct CoinSplit {
  Matrix2 p;
  Matrix2 q;

  Matrix2 sum() const { return p + q; }
};

CoinSplit split_coin(const Coin& u);

// Coin assignment over the lattice: one coin at the origin, one everywhere else,
// optionally overridden at individual sites.
class CoinField {
 public:
  // Hadamard everywhere, exp(2*pi*i*phi) times Hadamard at x = 0.
  static CoinField wojcik(double phi);
  static CoinField homogeneous(const Coin& bulk);
  static CoinField one_defect(const Coin& bulk, const Coin& defect);
  // General per-site assignment; sites not in the map use the bulk coin.
  static CoinField with_sites(const Coin& bulk, std::map<int, Coin> sites);

  const Coin& coin_at(int x) const;
  const Coin& bulk_coin() const { return bulk_; }
  const Coin& defect_coin() const { return defect_; }
  std::optional<double> phase() const { return phase_; }

 private:
  CoinField(Coin bulk, Coin defect, std::optional<double> phase, std::map<int, Coin> sites)
      : bulk_(bulk), defect_(defect), phase_(phase), sites_(std::move(sites)) {}

  Coin bulk_;
  Coin defect_;
  std::optional<double> phase_;
  std::map<int, Coin> sites_;
};

class WalkState {
 public:
  // Zero state on [-half_width, half_width]. Throws DomainError for half_width < 1.
  explicit WalkState(int half_width, long time = 0);

  static WalkState localized(int half_width, const Amplitude& origin);

  int half_width() const { return half_width_; }
  std::size_t size() const { return sites_.size(); }
  long time() const { return time_; }
  bool boundary_leak() const { return boundary_leak_; }

  bool contains(int x) const { return x >= -half_width_ && x <= half_width_; }
  // Out-of-lattice reads return zero.
  Amplitude at(int x) const { return contains(x) ? sites_[index(x)] : Amplitude{}; }
  // Throws DomainError outside [-L, L].
  void set(int x, const Amplitude& v);

  std::span<const Amplitude> sites() const { return sites_; }

 private:
  std::size_t index(int x) const { return static_cast<std::size_t>(x + half_width_); }

  friend WalkState step(const WalkState&, const CoinField&);
  friend WalkState evolve(const WalkState&, const CoinField&, long);

  int half_width_;
  long time_;
  bool boundary_leak_ = false;
  std::vector<Amplitude> sites_;
};

struct Measure {
  int half_width = 0;
  std::vector<double> values;

  double at(int x) const {
    return (x < -half_width || x > half_width) ? 0.0
                                               : values[static_cast<std::size_t>(x + half_width)];
  }
};

// Relative weight on the outer two sites per side above which truncation is flagged.
inline constexpr double kBoundaryLeakThreshold = 1e-14;

WalkState step(const WalkState& state, const CoinField& field);
// n-fold step; n < 0 throws DomainError. The leak flag is sticky.
WalkState evolve(const WalkState& state, const CoinField& field, long n);

Measure measure(const WalkState& state);
// Sum of site weights, accumulated from x = -L upward.
double total_norm(const WalkState& state);

// (1/T) sum_{n=0}^{T-1} mu_n. Throws BoundaryLeakError if any step leaks.
Measure time_averaged_measure(const WalkState& init, const CoinField& field, long horizon);

}  // namespace qwalk
