#include "abssep/matricization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "abssep/error.hpp"
#include "abssep/rng.hpp"

namespace abssep {

namespace {

std::size_t cell(int p, int k, int l) {
  return static_cast<std::size_t>((k - 1) * p + (l - 1));
}

void require_p(int p) {
  if (p < 1) throw Error(Errc::UnsupportedP, "p must be positive");
}

void check_pair(int p, const IndexPair& pair, bool strict) {
  const bool ok = pair.k >= 1 && pair.l <= p && (strict ? pair.k < pair.l : pair.k <= pair.l);
  if (!ok) {
    std::ostringstream msg;
    msg << "index pair (" << pair.k << ", " << pair.l << ") outside "
        << (strict ? "S-" : "S+") << " for p = " << p;
    throw Error(Errc::IndexOutOfRange, msg.str());
  }
}

std::vector<int> ranks_from_sequence(int p, std::span<const IndexPair> sequence, bool strict) {
  const std::size_t expected = static_cast<std::size_t>(strict ? p * (p - 1) / 2 : p * (p + 1) / 2);
  if (sequence.size() != expected) {
    throw Error(Errc::WrongLength, "ordering does not list every index pair exactly once");
  }
  std::vector<int> ranks(static_cast<std::size_t>(p * p), 0);
  int rank = 0;
  for (const auto& pair : sequence) {
    check_pair(p, pair, strict);
    int& slot = ranks[cell(p, pair.k, pair.l)];
    if (slot != 0) throw Error(Errc::WrongLength, "ordering lists an index pair twice");
    slot = ++rank;
  }
  return ranks;
}

double product(const SchmidtVector& x, const IndexPair& pair) {
  return x[pair.k - 1] * x[pair.l - 1];
}

// Plus sequences of the twelve ququart orderings, written as kl digits.
constexpr std::array<std::array<int, 10>, 12> kQuquartOrderings{{
    {11, 12, 13, 14, 22, 23, 24, 33, 34, 44},
    {11, 12, 13, 14, 22, 23, 33, 24, 34, 44},
    {11, 12, 13, 22, 23, 33, 14, 24, 34, 44},
    {11, 12, 22, 13, 23, 33, 14, 24, 34, 44},
    {11, 12, 13, 22, 23, 14, 33, 24, 34, 44},
    {11, 12, 22, 13, 23, 14, 33, 24, 34, 44},
    {11, 12, 13, 22, 23, 14, 24, 33, 34, 44},
    {11, 12, 22, 13, 23, 14, 24, 33, 34, 44},
    {11, 12, 13, 22, 14, 23, 33, 24, 34, 44},
    {11, 12, 22, 13, 14, 23, 33, 24, 34, 44},
    {11, 12, 13, 22, 14, 23, 24, 33, 34, 44},
    {11, 12, 22, 13, 14, 23, 24, 33, 34, 44},
}};

OrderingPair pair_from_products(const SchmidtVector& x, Rng* tie_break) {
  const int p = x.size();
  if (std::all_of(x.values().begin(), x.values().end(), [](double v) { return v == 0.0; })) {
    throw Error(Errc::ZeroVector, "Schmidt vector is identically zero");
  }
  auto order = index_pair_sets(p).s_plus;
  std::stable_sort(order.begin(), order.end(), [&](const IndexPair& a, const IndexPair& b) {
    return product(x, a) > product(x, b);
  });
  if (tie_break != nullptr) {
    auto first = order.begin();
    while (first != order.end()) {
      const double value = product(x, *first);
      auto last = std::find_if(first, order.end(),
                               [&](const IndexPair& q) { return product(x, q) != value; });
      const auto count = static_cast<int>(last - first);
      for (int i = count - 1; i > 0; --i) {
        std::iter_swap(first + i, first + tie_break->uniform_int(0, i));
      }
      first = last;
    }
  }
  return OrderingPair::from_plus_sequence(p, order);
}

}  // namespace

IndexPairSets index_pair_sets(int p) {
  require_p(p);
  IndexPairSets sets;
  sets.p = p;
  for (int k = 1; k <= p; ++k) {
    for (int l = k; l <= p; ++l) {
      sets.s_plus.push_back({k, l});
      if (k < l) sets.s_minus.push_back({k, l});
    }
  }
  return sets;
}

OrderingPair OrderingPair::from_plus_sequence(int p, std::span<const IndexPair> plus_sequence) {
  std::vector<IndexPair> minus;
  for (const auto& pair : plus_sequence) {
    if (pair.k < pair.l) minus.push_back(pair);
  }
  return from_sequences(p, plus_sequence, minus);
}

OrderingPair OrderingPair::from_sequences(int p, std::span<const IndexPair> plus_sequence,
                                          std::span<const IndexPair> minus_sequence) {
  require_p(p);
  auto plus = ranks_from_sequence(p, plus_sequence, false);
  auto minus = ranks_from_sequence(p, minus_sequence, true);
  for (std::size_t i = 0; i + 1 < minus_sequence.size(); ++i) {
    const auto& a = minus_sequence[i];
    const auto& b = minus_sequence[i + 1];
    if (plus[cell(p, a.k, a.l)] > plus[cell(p, b.k, b.l)]) {
      throw Error(Errc::OutOfRange, "sigma- is not consistent with sigma+");
    }
  }
  return OrderingPair(p, std::move(plus), std::move(minus));
}

int OrderingPair::sigma_plus(int k, int l) const {
  check_pair(p_, {k, l}, false);
  return plus_rank_[cell(p_, k, l)];
}

int OrderingPair::sigma_minus(int k, int l) const {
  check_pair(p_, {k, l}, true);
  return minus_rank_[cell(p_, k, l)];
}

std::vector<IndexPair> OrderingPair::plus_sequence() const {
  std::vector<IndexPair> out(static_cast<std::size_t>(p_ * (p_ + 1) / 2));
  for (int k = 1; k <= p_; ++k)
    for (int l = k; l <= p_; ++l) out[static_cast<std::size_t>(sigma_plus(k, l) - 1)] = {k, l};
  return out;
}

std::vector<IndexPair> OrderingPair::minus_sequence() const {
  std::vector<IndexPair> out(static_cast<std::size_t>(p_ * (p_ - 1) / 2));
  for (int k = 1; k <= p_; ++k)
    for (int l = k + 1; l <= p_; ++l) out[static_cast<std::size_t>(sigma_minus(k, l) - 1)] = {k, l};
  return out;
}

SchmidtVector::SchmidtVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(Errc::WrongLength, "Schmidt vector is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) throw Error(Errc::OutOfRange, "Schmidt coefficients must be nonnegative");
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw Error(Errc::OutOfRange, "Schmidt coefficients must be in non-increasing order");
    }
  }
}

int lambda_hat_index(const OrderingPair& op, int row, int col, int total) {
  if (row <= col) return total + 1 - op.sigma_plus(row + 1, col + 1);
  return -op.sigma_minus(col + 1, row + 1);
}

RealMatrix build_lambda_hat(const Spectrum& s, const OrderingPair& op) {
  if (op.p() != s.dims().p()) {
    std::ostringstream msg;
    msg << "ordering pair has p = " << op.p() << " but the spectrum has p = " << s.dims().p();
    throw Error(Errc::DimensionMismatch, msg.str());
  }
  const int p = op.p();
  const int total = s.dims().total();
  RealMatrix out(p, p);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      const int index = lambda_hat_index(op, r, c, total);
      out(r, c) = index > 0 ? s.lambda(index) : -s.lambda(-index);
    }
  }
  return out;
}

SymMatrix build_lambda_sym(const Spectrum& s, const OrderingPair& op) {
  return SymMatrix::symmetrized_sum(build_lambda_hat(s, op));
}

std::vector<OrderingPair> canonical_pairs(int p) {
  switch (p) {
    case 2:
      return {row_major_pair(2)};
    case 3:
      return {column_major_pair(3), row_major_pair(3)};
    case 4: {
      std::vector<OrderingPair> out;
      for (const auto& digits : kQuquartOrderings) {
        std::vector<IndexPair> sequence;
        for (int kl : digits) sequence.push_back({kl / 10, kl % 10});
        out.push_back(OrderingPair::from_plus_sequence(4, sequence));
      }
      return out;
    }
    default: {
      std::ostringstream msg;
      msg << "no closed-form ordering set for p = " << p << "; use sample_pairs";
      throw Error(Errc::UnsupportedP, msg.str());
    }
  }
}

OrderingPair row_major_pair(int p) {
  return OrderingPair::from_plus_sequence(p, index_pair_sets(p).s_plus);
}

OrderingPair column_major_pair(int p) {
  require_p(p);
  std::vector<IndexPair> sequence;
  for (int l = 1; l <= p; ++l)
    for (int k = 1; k <= l; ++k) sequence.push_back({k, l});
  return OrderingPair::from_plus_sequence(p, sequence);
}

OrderingPair compatible_pair_for(const SchmidtVector& x) { return pair_from_products(x, nullptr); }

OrderingPair compatible_pair_for(const SchmidtVector& x, Rng& tie_break) {
  return pair_from_products(x, &tie_break);
}

bool is_compatible(const SchmidtVector& x, const OrderingPair& op) {
  if (op.p() != x.size()) throw Error(Errc::DimensionMismatch, "vector length differs from p");
  const auto plus = op.plus_sequence();
  double scale = 0.0;
  for (const auto& pair : plus) scale = std::max(scale, product(x, pair));
  const double slack = 1e-12 * scale;
  // Adjacent comparisons suffice: compatibility is a chain of >= relations.
  for (std::size_t i = 0; i + 1 < plus.size(); ++i) {
    if (product(x, plus[i]) < product(x, plus[i + 1]) - slack) return false;
  }
  const auto minus = op.minus_sequence();
  for (std::size_t i = 0; i + 1 < minus.size(); ++i) {
    if (op.sigma_plus(minus[i].k, minus[i].l) > op.sigma_plus(minus[i + 1].k, minus[i + 1].l)) {
      return false;
    }
  }
  return true;
}

std::vector<OrderingPair> sample_pairs(int p, std::uint64_t seed, int samples) {
  if (p < 2) throw Error(Errc::UnsupportedP, "p must be at least 2");
  std::set<OrderingPair> found;
  const int lattice_gap = 2 * p;
  for (int i = 0; i < samples; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    std::vector<double> x(static_cast<std::size_t>(p));
    if (i % 2 == 0) {
      // Generic point: distinct products with probability one.
      double log_x = 0.0;
      for (auto& v : x) {
        v = std::exp(log_x);
        log_x -= rng.exponential();
      }
      found.insert(compatible_pair_for(SchmidtVector(std::move(x))));
    } else {
      // Lattice point x_k = 2^-e_k with integer gaps: products tie exactly on
      // the hyperplanes where several orderings meet.
      int exponent = 0;
      for (auto& v : x) {
        v = std::ldexp(1.0, -exponent);
        exponent += rng.uniform_int(1, lattice_gap);
      }
      found.insert(compatible_pair_for(SchmidtVector(std::move(x)), rng));
    }
  }
  return {found.begin(), found.end()};
}

std::vector<double> signed_products(const SchmidtVector& x) {
  const auto sets = index_pair_sets(x.size());
  std::vector<double> out;
  out.reserve(sets.s_plus.size() + sets.s_minus.size());
  for (const auto& pair : sets.s_plus) out.push_back(product(x, pair));
  for (const auto& pair : sets.s_minus) out.push_back(-product(x, pair));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace abssep
