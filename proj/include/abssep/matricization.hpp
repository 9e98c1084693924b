#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "abssep/matrix.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

class Rng;

/// Index pair (k, l), 1-based.
struct IndexPair {
  int k = 0;
  int l = 0;
  auto operator<=>(const IndexPair&) const = default;
};

/// S+ = {(k,l) : k <= l} and S- = {(k,l) : k < l}, both in lexicographic order.
struct IndexPairSets {
  int p = 0;
  std::vector<IndexPair> s_plus;
  std::vector<IndexPair> s_minus;
};

IndexPairSets index_pair_sets(int p);

/// A pair of linear orderings (sigma+, sigma-) of S+ and S-.
///
/// Ranks are 1-based: sigma_plus(k, l) == 1 marks the pair whose product is
/// largest. Construction validates that both maps are bijections and that
/// sigma- is consistent with sigma+ on S-.
class OrderingPair {
 public:
  /// sigma+ from the S+ pairs listed in rank order; sigma- is its restriction
  /// to S-.
  static OrderingPair from_plus_sequence(int p, std::span<const IndexPair> plus_sequence);
  static OrderingPair from_sequences(int p, std::span<const IndexPair> plus_sequence,
                                     std::span<const IndexPair> minus_sequence);

  int p() const noexcept { return p_; }
  int sigma_plus(int k, int l) const;
  int sigma_minus(int k, int l) const;

  std::vector<IndexPair> plus_sequence() const;
  std::vector<IndexPair> minus_sequence() const;

  auto operator<=>(const OrderingPair&) const = default;

 private:
  OrderingPair(int p, std::vector<int> plus_rank, std::vector<int> minus_rank)
      : p_(p), plus_rank_(std::move(plus_rank)), minus_rank_(std::move(minus_rank)) {}

  int p_ = 0;
  // p*p grids indexed by (k-1)*p + (l-1); zero outside S+ / S-.
  std::vector<int> plus_rank_;
  std::vector<int> minus_rank_;
};

/// Descending nonnegative vector x_1 >= ... >= x_p >= 0. Not normalized.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<double> values_;
};

/// Signed eigenvalue index of entry (row, col) of Lambda-hat, 0-based row/col:
/// +i stands for lambda_i, -i for -lambda_i.
int lambda_hat_index(const OrderingPair& op, int row, int col, int total);

/// Lambda-hat(lambda; sigma+, sigma-): upper triangle lambda_{mn+1-sigma+(k,l)},
/// strict lower triangle -lambda_{sigma-(l,k)}.
RealMatrix build_lambda_hat(const Spectrum& s, const OrderingPair& op);

/// Lambda-hat + Lambda-hat^T.
SymMatrix build_lambda_sym(const Spectrum& s, const OrderingPair& op);

/// All of Sigma+-(p) for p <= 4, in the published order: one pair for p = 2,
/// {column-major, row-major} for p = 3, and the twelve ququart orderings.
std::vector<OrderingPair> canonical_pairs(int p);

/// x_1^2 >= x_1 x_2 >= ... >= x_1 x_p >= x_2^2 >= ...
OrderingPair row_major_pair(int p);

/// x_1^2 >= x_1 x_2 >= x_2^2 >= x_1 x_3 >= x_2 x_3 >= x_3^2 >= ...
OrderingPair column_major_pair(int p);

/// The ordering pair sorting the products x_k x_l descending, ties broken
/// lexicographically on (k, l).
OrderingPair compatible_pair_for(const SchmidtVector& x);

/// As above, but exactly tied products are put in random order.
OrderingPair compatible_pair_for(const SchmidtVector& x, Rng& tie_break);

bool is_compatible(const SchmidtVector& x, const OrderingPair& op);

/// Randomized discovery of Sigma+-(p). Every returned pair is compatible with
/// some strictly decreasing positive vector. Result is sorted and free of
/// duplicates.
std::vector<OrderingPair> sample_pairs(int p, std::uint64_t seed, int samples);

/// E(x) = {x_k x_l : k <= l} u {-x_k x_l : k < l}, sorted descending.
std::vector<double> signed_products(const SchmidtVector& x);

}  // namespace abssep
