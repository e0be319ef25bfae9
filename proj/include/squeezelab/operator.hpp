#pragma once

// Ladder-operator expressions over a handful of bosonic modes.
//
// An Operator is a sum of Terms; each Term is a complex coefficient times an
// ordered product of creation/annihilation operators. Products are written
// left to right and act on kets right to left, as in the usual notation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace squeezelab {

using complex = std::complex<double>;

inline constexpr int kMaxModes = 4;

/// Occupation numbers of up to kMaxModes modes.
struct Occupation {
  std::array<int, kMaxModes> n{};
  int modes = 0;

  Occupation() = default;
  Occupation(std::initializer_list<int> values) : modes(static_cast<int>(values.size())) {
    if (modes > kMaxModes) throw std::out_of_range("Occupation: too many modes");
    std::copy(values.begin(), values.end(), n.begin());
  }

  int operator[](int mode) const { return n[static_cast<std::size_t>(mode)]; }
  int& operator[](int mode) { return n[static_cast<std::size_t>(mode)]; }

  int total() const {
    int sum = 0;
    for (int m = 0; m < modes; ++m) sum += n[static_cast<std::size_t>(m)];
    return sum;
  }

  /// 16 bits per mode; occupations are far below 65536 in practice.
  std::uint64_t packed() const {
    std::uint64_t key = static_cast<std::uint64_t>(modes);
    for (int m = 0; m < modes; ++m) key = (key << 16) | static_cast<std::uint64_t>(n[static_cast<std::size_t>(m)]);
    return key;
  }

  friend bool operator==(const Occupation&, const Occupation&) = default;
  friend auto operator<=>(const Occupation&, const Occupation&) = default;
};

struct Ladder {
  int mode = 0;
  bool dagger = false;

  friend bool operator==(const Ladder&, const Ladder&) = default;
};

struct Term {
  complex coeff{1.0, 0.0};
  std::vector<Ladder> ops;  // left-to-right product

  /// Applies the operator product (without coeff) to a basis ket. Returns
  /// the real matrix-element factor, or nullopt when the ket is annihilated.
  std::optional<double> apply(Occupation& occ) const {
    double factor = 1.0;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      int& n = occ[it->mode];
      if (it->dagger) {
        ++n;
        factor *= std::sqrt(static_cast<double>(n));
      } else {
        if (n == 0) return std::nullopt;
        factor *= std::sqrt(static_cast<double>(n));
        --n;
      }
    }
    return factor;
  }

  int max_mode() const {
    int m = -1;
    for (const auto& op : ops) m = std::max(m, op.mode);
    return m;
  }
};

class Operator {
 public:
  Operator() = default;
  explicit Operator(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static Operator identity(complex c = 1.0) { return Operator({Term{c, {}}}); }
  static Operator annihilate(int mode) { return Operator({Term{1.0, {Ladder{mode, false}}}}); }
  static Operator create(int mode) { return Operator({Term{1.0, {Ladder{mode, true}}}}); }
  static Operator number(int mode) { return create(mode) * annihilate(mode); }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Highest mode index referenced, or -1 for a scalar.
  int max_mode() const {
    int m = -1;
    for (const auto& t : terms_) m = std::max(m, t.max_mode());
    return m;
  }

  Operator adjoint() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Term a{std::conj(t.coeff), {}};
      a.ops.reserve(t.ops.size());
      for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) a.ops.push_back({it->mode, !it->dagger});
      out.push_back(std::move(a));
    }
    return Operator(std::move(out));
  }

  Operator& operator+=(const Operator& rhs) {
    for (const auto& t : rhs.terms_) add_term(t);
    return *this;
  }
  Operator& operator-=(const Operator& rhs) { return *this += rhs * complex(-1.0); }
  Operator& operator*=(complex c) {
    for (auto& t : terms_) t.coeff *= c;
    prune();
    return *this;
  }

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, complex c) { return lhs *= c; }
  friend Operator operator*(complex c, Operator rhs) { return rhs *= c; }
  friend Operator operator*(Operator lhs, double c) { return lhs *= complex(c); }
  friend Operator operator*(double c, Operator rhs) { return rhs *= complex(c); }
  friend Operator operator-(Operator op) { return op *= complex(-1.0); }

  friend Operator operator*(const Operator& lhs, const Operator& rhs) {
    Operator out;
    for (const auto& a : lhs.terms_) {
      for (const auto& b : rhs.terms_) {
        Term t{a.coeff * b.coeff, a.ops};
        t.ops.insert(t.ops.end(), b.ops.begin(), b.ops.end());
        out.add_term(t);
      }
    }
    return out;
  }

 private:
  void add_term(const Term& t) {
    for (auto& existing : terms_) {
      if (existing.ops == t.ops) {
        existing.coeff += t.coeff;
        prune();
        return;
      }
    }
    if (t.coeff != complex(0.0)) terms_.push_back(t);
  }

  void prune() {
    std::erase_if(terms_, [](const Term& t) { return t.coeff == complex(0.0); });
  }

  std::vector<Term> terms_;
};

/// op^k.
inline Operator power(const Operator& op, int k) {
  Operator out = Operator::identity();
  for (int i = 0; i < k; ++i) out = out * op;
  return out;
}

}  // namespace squeezelab
