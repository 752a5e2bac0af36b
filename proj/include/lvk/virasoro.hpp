#pragma once

#include "lvk/linalg.hpp"
#include "lvk/numeric.hpp"
#include "lvk/rational.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace lvk::virasoro {

/// b > 0, Q = b + 1/b, c = 1 + 6 Q^2 (exact).
struct LiouvilleParams {
  Rational b;
  Rational Q;
  Rational c;

  static LiouvilleParams from_b(const Rational& b);
};

/// Highest weight Delta (the L_0 eigenvalue of e_alpha). When built from a
/// momentum r, Delta = Q^2/4 + r^2.
struct Weight {
  Rational delta;
  std::optional<Rational> momentum;

  static Weight from_delta(const Rational& delta) { return {delta, std::nullopt}; }
};

Weight weight_from_momentum(const LiouvilleParams& params, const Rational& r);

/// Numeric weight for alpha = Q/2 + i l/(4 pi b).
struct NumericWeight {
  Real momentum;  // r = l / (4 pi b)
  Real delta;     // Q^2/4 + r^2
  Real alpha_re;  // Q/2
  Real alpha_im;  // r
};

/// Requires l > 0 (DomainError otherwise). Uses the current PrecisionScope.
NumericWeight weight_from_length(const LiouvilleParams& params, const Real& length);

/// Weakly decreasing positive parts; L_{-p1} ... L_{-pk} e.
using Partition = std::vector<int>;

int level(const Partition& p);

/// Partitions of n in reverse-lexicographic order: [n], [n-1,1], ..., [1,...,1].
std::vector<Partition> partitions(int n);

std::size_t partition_count(int n);

std::string partition_label(const Partition& p);  // "2,1"; "" for the empty partition

/// Finite combination of PBW basis vectors L_{-lambda} e with rational
/// coefficients. Zero coefficients are never stored.
class VermaVector {
 public:
  VermaVector() = default;
  static VermaVector basis(Partition p);
  static VermaVector highest_weight() { return basis({}); }

  const std::map<Partition, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Partition& p) const;

  void add(const Partition& p, const Rational& c);
  VermaVector& operator+=(const VermaVector& o);
  VermaVector& operator-=(const VermaVector& o);
  VermaVector& operator*=(const Rational& s);

  friend VermaVector operator+(VermaVector a, const VermaVector& b) { return a += b; }
  friend VermaVector operator-(VermaVector a, const VermaVector& b) { return a -= b; }
  friend VermaVector operator*(const Rational& s, VermaVector a) { return a *= s; }
  friend bool operator==(const VermaVector&, const VermaVector&) = default;

  /// Component of a single level.
  VermaVector homogeneous(int lvl) const;

 private:
  std::map<Partition, Rational> terms_;
};

/// Verma module at central charge c and highest weight Delta with a memo of
/// L_n on basis vectors. Thread-safe.
class VermaModule {
 public:
  VermaModule(Rational c, Rational delta) : c_(std::move(c)), delta_(std::move(delta)) {}
  VermaModule(const LiouvilleParams& params, const Weight& weight) : VermaModule(params.c, weight.delta) {}

  VermaModule(const VermaModule& o) : c_(o.c_), delta_(o.delta_) {}

  const Rational& central_charge() const noexcept { return c_; }
  const Rational& delta() const noexcept { return delta_; }

  /// L_n v, normal ordered.
  VermaVector apply(int n, const VermaVector& v) const;
  /// L_n L_{-p} e.
  VermaVector apply_basis(int n, const Partition& p) const;

  /// Bilinear Shapovalov form with <e, e> = 1.
  Rational shapovalov(const VermaVector& v, const VermaVector& w) const;

 private:
  VermaVector compute(int n, const Partition& p) const;

  Rational c_;
  Rational delta_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, Partition>, VermaVector> memo_;
};

VermaVector l_action(const LiouvilleParams& params, const Weight& weight, int n, const VermaVector& v);
Rational shapovalov(const LiouvilleParams& params, const Weight& weight, const VermaVector& v,
                    const VermaVector& w);

/// Entry (i, j) = <L_{-p_i} e, L_{-p_j} e> over partitions(level). Entries are
/// assembled by `threads` workers; the result does not depend on the count.
linalg::Matrix gram_matrix(const LiouvilleParams& params, const Weight& weight, int level,
                           unsigned threads = 1);
linalg::Matrix gram_matrix(const VermaModule& module, int level, unsigned threads = 1);

/// Throws DomainError("singular_gram") whose message reports the vanishing
/// determinant.
linalg::Matrix gram_inverse(const LiouvilleParams& params, const Weight& weight, int level);
linalg::Matrix gram_inverse(const VermaModule& module, int level);

/// q^Delta * sum_{n <= N} c_n q^n.
struct BlockSeries {
  Rational delta;
  std::vector<Rational> coefficients;

  int order() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  friend bool operator==(const BlockSeries&, const BlockSeries&) = default;
};

/// Trace of q^{L_0} over the Verma module: c_n = p(n).
BlockSeries character(const Weight& weight, int order);

}  // namespace lvk::virasoro
