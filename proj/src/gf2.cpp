#include "specnum/gf2.hpp"

#include <algorithm>
#include <bit>

namespace specnum {

Gf2Vector Gf2Vector::unit(std::size_t size, std::size_t index) {
    Gf2Vector v(size);
    v.set(index, true);
    return v;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& o) {
    if (size_ != o.size_)
        throw std::invalid_argument("Gf2Vector: size mismatch in xor");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= o.words_[i];
    return *this;
}

bool Gf2Vector::operator<(const Gf2Vector& o) const {
    if (size_ != o.size_)
        return size_ < o.size_;
    return words_ < o.words_;
}

bool Gf2Vector::is_zero() const {
    for (std::uint64_t w : words_)
        if (w)
            return false;
    return true;
}

std::size_t Gf2Vector::top() const {
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i])
            return (i << 6) + (63 - std::countl_zero(words_[i]));
    }
    return npos;
}

std::size_t Gf2Vector::popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_)
        n += std::popcount(w);
    return n;
}

std::vector<std::size_t> Gf2Vector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i))
            out.push_back(i);
    return out;
}

std::string Gf2Vector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.cols[i].set(i, true);
    return m;
}

Gf2Vector Gf2Matrix::apply(const Gf2Vector& x) const {
    if (x.size() != cols.size())
        throw std::invalid_argument("Gf2Matrix: dimension mismatch in apply");
    Gf2Vector out(rows);
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (x.get(j))
            out ^= cols[j];
    return out;
}

ReductionResult column_reduce(const Gf2Matrix& m) {
    ReductionResult res;
    res.reduced = m;
    res.ops = Gf2Matrix::identity(m.col_count());
    std::map<std::size_t, std::size_t> owner;  // pivot row -> column index
    for (std::size_t j = 0; j < m.col_count(); ++j) {
        std::size_t low = res.reduced.cols[j].top();
        while (low != Gf2Vector::npos) {
            auto it = owner.find(low);
            if (it == owner.end())
                break;
            res.reduced.cols[j] ^= res.reduced.cols[it->second];
            res.ops.cols[j] ^= res.ops.cols[it->second];
            low = res.reduced.cols[j].top();
        }
        if (low != Gf2Vector::npos) {
            owner[low] = j;
            res.pivots[j] = low;
        }
    }
    return res;
}

std::size_t rank(const Gf2Matrix& m) {
    return column_reduce(m).pivots.size();
}

std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& target) {
    if (target.size() != m.rows)
        throw std::invalid_argument("solve: target length does not match row count");
    ReductionResult red = column_reduce(m);
    std::map<std::size_t, std::size_t> owner;
    for (auto [col, row] : red.pivots)
        owner[row] = col;
    Gf2Vector r = target;
    Gf2Vector x(m.col_count());
    while (!r.is_zero()) {
        auto it = owner.find(r.top());
        if (it == owner.end())
            return std::nullopt;
        r ^= red.reduced.cols[it->second];
        x ^= red.ops.cols[it->second];
    }
    return x;
}

std::vector<Gf2Vector> kernel(const Gf2Matrix& m) {
    ReductionResult red = column_reduce(m);
    std::vector<Gf2Vector> out;
    for (std::size_t j = 0; j < m.col_count(); ++j)
        if (red.reduced.cols[j].is_zero())
            out.push_back(red.ops.cols[j]);
    return out;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Gf2Vector>& vectors) {
    Subspace s(ambient);
    for (const auto& v : vectors)
        s.insert(v);
    return s;
}

Gf2Vector Subspace::reduce(const Gf2Vector& v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace: ambient dimension mismatch");
    Gf2Vector r = v;
    bool changed = true;
    while (changed && !r.is_zero()) {
        changed = false;
        std::size_t low = r.top();
        for (const auto& b : basis_) {
            if (b.top() == low) {
                r ^= b;
                changed = true;
                break;
            }
        }
    }
    return r;
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& b : other.basis_)
        if (!member(b))
            return false;
    return true;
}

bool Subspace::insert(const Gf2Vector& v) {
    Gf2Vector r = reduce(v);
    if (r.is_zero())
        return false;
    basis_.push_back(std::move(r));
    return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("Subspace: ambient dimension mismatch in sum");
    Subspace s = a;
    for (const auto& v : b.basis())
        s.insert(v);
    return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("Subspace: ambient dimension mismatch in intersect");
    // Kernel of [A | B]: the A-part of each kernel vector lies in both spans.
    Gf2Matrix m(a.ambient(), a.dim() + b.dim());
    for (std::size_t j = 0; j < a.dim(); ++j)
        m.cols[j] = a.basis()[j];
    for (std::size_t j = 0; j < b.dim(); ++j)
        m.cols[a.dim() + j] = b.basis()[j];
    Subspace s(a.ambient());
    for (const auto& k : kernel(m)) {
        Gf2Vector v(a.ambient());
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (k.get(j))
                v ^= a.basis()[j];
        s.insert(v);
    }
    return s;
}

std::vector<Gf2Vector> quotient_basis(const Subspace& s, const Subspace& sub) {
    if (!s.contains(sub))
        throw std::invalid_argument("quotient_basis: sub is not a subspace of s");
    Subspace acc = sub;
    std::vector<Gf2Vector> reps;
    for (const auto& v : s.basis()) {
        Gf2Vector r = acc.reduce(v);
        if (!r.is_zero()) {
            reps.push_back(r);
            acc.insert(r);
        }
    }
    return reps;
}

}  // namespace specnum
