#include "jetmap/monomial_table.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "jetmap/errors.hpp"

namespace jetmap {
namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::size_t num = n - k + i;
    const std::size_t g = std::gcd(result, i);
    const std::size_t r = result / g;
    const std::size_t d = i / g;
    std::size_t prod;
    if (__builtin_mul_overflow(r, num / d, &prod)) {
      throw std::overflow_error("binomial coefficient overflows size_t");
    }
    result = prod;
  }
  return result;
}

void append_compositions(unsigned d, std::size_t m, std::vector<unsigned>& row,
                         std::vector<unsigned>& out) {
  const std::size_t slot = row.size();
  if (slot + 1 == m) {
    row.push_back(d);
    out.insert(out.end(), row.begin(), row.end());
    row.pop_back();
    return;
  }
  for (unsigned first = d + 1; first-- > 0;) {
    row.push_back(first);
    append_compositions(d - first, m, row, out);
    row.pop_back();
  }
}

}  // namespace

std::size_t table_size(std::size_t m, std::size_t p) {
  if (m == 0) throw std::invalid_argument("table_size: m must be >= 1");
  return binomial(p + m, p);
}

unsigned degree(std::span<const unsigned> j) {
  return std::accumulate(j.begin(), j.end(), 0u);
}

Rank rank(std::span<const unsigned> j) {
  const std::size_t m = j.size();
  if (m == 0) throw std::invalid_argument("rank: empty exponent vector");
  Rank r = 1;
  std::size_t tail = 0;
  for (std::size_t l = 1; l <= m; ++l) {
    tail += j[m - l];
    const std::size_t term = binomial(l - 1 + tail, l);
    if (__builtin_add_overflow(r, term, &r)) {
      throw std::overflow_error("rank overflows size_t");
    }
  }
  return r;
}

MonomialTable::MonomialTable(std::size_t m, std::size_t p, std::size_t size)
    : m_(m), p_(p), size_(size) {}

std::shared_ptr<const MonomialTable> MonomialTable::build(std::size_t m, std::size_t p,
                                                          std::size_t cap) {
  if (m == 0) throw std::invalid_argument("MonomialTable: m must be >= 1");
  std::size_t L = 0;
  std::size_t box_total = 0;
  try {
    L = table_size(m, p);
    // Each (lo, hi) pair with |lo| + |hi| <= p is one box entry.
    box_total = table_size(2 * m, p);
  } catch (const std::overflow_error&) {
    throw CapacityError("MonomialTable: size overflows for m=" + std::to_string(m) +
                        ", p=" + std::to_string(p));
  }
  if (L > cap || box_total > cap) {
    throw CapacityError("MonomialTable: m=" + std::to_string(m) + ", p=" +
                        std::to_string(p) + " needs " + std::to_string(L) + " rows and " +
                        std::to_string(box_total) + " box entries, cap is " +
                        std::to_string(cap));
  }

  std::shared_ptr<MonomialTable> t(new MonomialTable(m, p, L));
  t->gamma_.reserve(L * m);
  std::vector<unsigned> row;
  row.reserve(m);
  for (unsigned d = 0; d <= p; ++d) append_compositions(d, m, row, t->gamma_);

  t->raise_.assign(L * m, 0);
  t->parent_.assign(L, 0);
  t->parent_var_.assign(L, 0);
  std::vector<unsigned> scratch(m);
  for (std::size_t r0 = 0; r0 < L; ++r0) {
    const auto j = t->exponents(r0 + 1);
    std::copy(j.begin(), j.end(), scratch.begin());
    const unsigned d = degree(j);
    for (std::size_t a = 0; a < m; ++a) {
      if (d < p) {
        ++scratch[a];
        t->raise_[r0 * m + a] = static_cast<std::uint32_t>(rank(scratch));
        --scratch[a];
      }
    }
    if (r0 > 0) {
      std::size_t a = 0;
      while (j[a] == 0) ++a;
      --scratch[a];
      t->parent_[r0] = static_cast<std::uint32_t>(rank(scratch) - 1);
      t->parent_var_[r0] = static_cast<std::uint32_t>(a);
    }
  }

  // Enumerate divisors of each monomial as an odometer over 0..j(k)_a; this
  // visits them in an order we then sort ascending.
  t->box_offset_.assign(L + 1, 0);
  t->box_lo_.reserve(box_total);
  t->box_hi_.reserve(box_total);
  std::vector<unsigned> lo(m), hi(m);
  std::vector<std::uint32_t> ranks;
  for (std::size_t k0 = 0; k0 < L; ++k0) {
    const auto jk = t->exponents(k0 + 1);
    ranks.clear();
    std::fill(lo.begin(), lo.end(), 0u);
    while (true) {
      ranks.push_back(static_cast<std::uint32_t>(rank(lo) - 1));
      std::size_t a = 0;
      while (a < m && lo[a] == jk[a]) lo[a++] = 0;
      if (a == m) break;
      ++lo[a];
    }
    std::sort(ranks.begin(), ranks.end());
    for (auto r0 : ranks) {
      const auto jl = t->exponents(r0 + 1);
      for (std::size_t a = 0; a < m; ++a) hi[a] = jk[a] - jl[a];
      t->box_lo_.push_back(r0);
      t->box_hi_.push_back(static_cast<std::uint32_t>(rank(hi) - 1));
    }
    t->box_offset_[k0 + 1] = t->box_lo_.size();
  }
  return t;
}

void MonomialTable::check_rank(Rank r) const {
  if (r < 1 || r > size_) {
    throw std::out_of_range("rank " + std::to_string(r) + " outside [1, " +
                            std::to_string(size_) + "]");
  }
}

std::span<const unsigned> MonomialTable::exponents(Rank r) const {
  check_rank(r);
  return {gamma_.data() + (r - 1) * m_, m_};
}

ExponentVector MonomialTable::unrank(Rank r) const {
  const auto j = exponents(r);
  return {j.begin(), j.end()};
}

unsigned MonomialTable::degree_of(Rank r) const { return degree(exponents(r)); }

Rank MonomialTable::rank_of(std::span<const unsigned> j) const {
  if (j.size() != m_) throw std::invalid_argument("rank_of: exponent vector has wrong length");
  if (degree(j) > p_) throw std::out_of_range("rank_of: degree exceeds table order");
  return rank(j);
}

std::vector<Rank> MonomialTable::box(Rank k) const {
  check_rank(k);
  const auto v = box0(k - 1);
  std::vector<Rank> out(v.lo.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v.lo[i] + 1;
  return out;
}

std::vector<Rank> MonomialTable::box_rev(Rank k) const {
  check_rank(k);
  const auto v = box0(k - 1);
  std::vector<Rank> out(v.hi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v.hi[i] + 1;
  return out;
}

Rank MonomialTable::raise(Rank r, std::size_t a) const {
  check_rank(r);
  if (a >= m_) throw std::out_of_range("raise: variable index out of range");
  return raise_[(r - 1) * m_ + a];
}

}  // namespace jetmap
