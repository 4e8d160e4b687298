#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace jetmap {

// 1-based position of a monomial in modified graded-lex order. Rank 1 is the
// constant monomial.
using Rank = std::size_t;
using ExponentVector = std::vector<unsigned>;

inline constexpr std::size_t kDefaultTableCap = 10'000'000;

// binomial(p + m, p); throws std::overflow_error if it does not fit.
std::size_t table_size(std::size_t m, std::size_t p);

// Giorgilli closed form. Defined for any degree, not just those in a table.
Rank rank(std::span<const unsigned> j);

unsigned degree(std::span<const unsigned> j);

class MonomialTable {
 public:
  // Rows are emitted degree by degree, each degree block in descending lex
  // order, so row r always equals rank(row r).
  static std::shared_ptr<const MonomialTable> build(std::size_t m, std::size_t p,
                                                    std::size_t cap = kDefaultTableCap);

  std::size_t vars() const noexcept { return m_; }
  std::size_t order() const noexcept { return p_; }
  std::size_t size() const noexcept { return size_; }

  std::span<const unsigned> exponents(Rank r) const;
  ExponentVector unrank(Rank r) const;
  unsigned degree_of(Rank r) const;

  // Rank of j inside this table; throws std::out_of_range when |j| > p.
  Rank rank_of(std::span<const unsigned> j) const;

  // Ascending ranks r with j(r) <= j(k) componentwise, and its reverse. The
  // i-th entries of the two lists are complementary: their exponents add to
  // j(k).
  std::vector<Rank> box(Rank k) const;
  std::vector<Rank> box_rev(Rank k) const;

  // Rank of j(r) + e_a, or 0 when that monomial has degree > p. a is 0-based.
  Rank raise(Rank r, std::size_t a) const;

  bool same_shape(const MonomialTable& other) const noexcept {
    return m_ == other.m_ && p_ == other.p_;
  }

  // 0-based views used by the jet kernels.
  struct BoxView {
    std::span<const std::uint32_t> lo;
    std::span<const std::uint32_t> hi;
  };
  BoxView box0(std::size_t k0) const noexcept {
    const auto b = box_offset_[k0];
    const auto n = box_offset_[k0 + 1] - b;
    return {{box_lo_.data() + b, n}, {box_hi_.data() + b, n}};
  }
  // For rank r0 >= 1 (0-based): G_{r0} = G_{parent0(r0)} * z_{parent_var(r0)}.
  std::uint32_t parent0(std::size_t r0) const noexcept { return parent_[r0]; }
  std::uint32_t parent_var(std::size_t r0) const noexcept { return parent_var_[r0]; }

 private:
  MonomialTable(std::size_t m, std::size_t p, std::size_t size);
  void check_rank(Rank r) const;

  std::size_t m_;
  std::size_t p_;
  std::size_t size_;
  std::vector<unsigned> gamma_;              // size_ * m_
  std::vector<std::size_t> box_offset_;      // size_ + 1
  std::vector<std::uint32_t> box_lo_;        // ascending 0-based ranks
  std::vector<std::uint32_t> box_hi_;        // complements of box_lo_
  std::vector<std::uint32_t> raise_;         // size_ * m_, 1-based, 0 = none
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> parent_var_;
};

using TablePtr = std::shared_ptr<const MonomialTable>;

}  // namespace jetmap
