#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specnum {

// Dense bit-packed vector over GF(2). Addition is XOR.
class Gf2Vector {
  public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static Gf2Vector unit(std::size_t size, std::size_t index);

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool b) {
        if (b)
            words_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    Gf2Vector& operator^=(const Gf2Vector& o);
    friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }
    bool operator==(const Gf2Vector& o) const { return size_ == o.size_ && words_ == o.words_; }
    bool operator!=(const Gf2Vector& o) const { return !(*this == o); }
    bool operator<(const Gf2Vector& o) const;  // for use as map keys

    bool is_zero() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    // Highest set bit index, npos if zero.
    std::size_t top() const;
    std::size_t popcount() const;
    std::vector<std::size_t> support() const;

    std::string to_string() const;

  private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Column-major matrix; all columns share a row count.
struct Gf2Matrix {
    std::size_t rows = 0;
    std::vector<Gf2Vector> cols;

    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows_, std::size_t ncols) : rows(rows_), cols(ncols, Gf2Vector(rows_)) {}

    static Gf2Matrix identity(std::size_t n);

    std::size_t col_count() const { return cols.size(); }
    Gf2Vector apply(const Gf2Vector& x) const;  // matrix * x
};

struct ReductionResult {
    Gf2Matrix reduced;                    // = input * ops
    Gf2Matrix ops;                        // invertible, upper triangular
    std::map<std::size_t, std::size_t> pivots;  // column -> pivot row (highest set bit)
};

// Left-to-right column reduction; nonzero reduced columns have distinct pivots.
ReductionResult column_reduce(const Gf2Matrix& m);

std::size_t rank(const Gf2Matrix& m);

// x with m*x = target, or nullopt if target is outside the column span.
std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& target);

// Basis of { x : m*x = 0 }.
std::vector<Gf2Vector> kernel(const Gf2Matrix& m);

// Subspace of GF(2)^n held as a reduced basis with distinct pivots.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
    static Subspace span(std::size_t ambient, const std::vector<Gf2Vector>& vectors);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Gf2Vector>& basis() const { return basis_; }

    // Residue of v after reduction against the basis; zero iff member.
    Gf2Vector reduce(const Gf2Vector& v) const;
    bool member(const Gf2Vector& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& other) const;

    // Inserts v if independent; returns true when the dimension grew.
    bool insert(const Gf2Vector& v);

    friend Subspace sum(const Subspace& a, const Subspace& b);
    friend Subspace intersect(const Subspace& a, const Subspace& b);

    // Representatives in s spanning s/sub; throws if sub is not contained in s.
    friend std::vector<Gf2Vector> quotient_basis(const Subspace& s, const Subspace& sub);

  private:
    std::size_t ambient_;
    std::vector<Gf2Vector> basis_;  // pivots strictly decreasing is not required; distinct is
};

}  // namespace specnum
