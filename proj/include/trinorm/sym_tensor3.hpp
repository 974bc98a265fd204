#pragma once

#include <array>
#include <vector>

#include "trinorm/types.hpp"

namespace trinorm {

// Symmetric order-3 tensor of dimension D, storing only the
// D*(D+1)*(D+2)/6 independent components Q(i,j,k) with i <= j <= k.
//
// Packed layout: lexicographic in (i,j,k), i slowest, k fastest, so for a
// fixed (i,j) the k-run [j, D) is contiguous. Full-index reads sort the
// indices, which makes the permutation symmetry exact by construction.
class SymTensor3 {
public:
    SymTensor3() = default;

    explicit SymTensor3(Index dim)
        : dim_(dim), packed_(packed_count(dim), 0.0) {
        if (dim < 1) throw DimensionMismatch("SymTensor3: dim must be >= 1");
    }

    static Index packed_count(Index d) { return d * (d + 1) * (d + 2) / 6; }

    Index dim() const { return dim_; }
    Index packed_size() const { return static_cast<Index>(packed_.size()); }

    double* packed_data() { return packed_.data(); }
    const double* packed_data() const { return packed_.data(); }

    // Packed index of a sorted triple i <= j <= k.
    Index packed_index_sorted(Index i, Index j, Index k) const {
        const Index d = dim_;
        const Index before_i = packed_count(d) - packed_count(d - i);
        const Index before_j = (j - i) * (2 * d - i - j + 1) / 2;
        return before_i + before_j + (k - j);
    }

    Index packed_index(Index a, Index b, Index c) const {
        sort3(a, b, c);
        return packed_index_sorted(a, b, c);
    }

    // Full-tensor read/write; any index permutation addresses the same slot.
    double operator()(Index a, Index b, Index c) const {
        return packed_[packed_index(a, b, c)];
    }
    double& operator()(Index a, Index b, Index c) {
        return packed_[packed_index(a, b, c)];
    }

    // 1 for i=j=k, 3 for a pair, 6 for distinct: the number of index
    // permutations a packed slot stands for in full-tensor sums.
    static double multiplicity(Index i, Index j, Index k) {
        if (i == j && j == k) return 1.0;
        if (i == j || j == k || i == k) return 3.0;
        return 6.0;
    }

    // Visit every packed slot as (i, j, k, value&) with i <= j <= k.
    template <typename F>
    void for_each_packed(F&& f) {
        Index c = 0;
        for (Index i = 0; i < dim_; ++i)
            for (Index j = i; j < dim_; ++j)
                for (Index k = j; k < dim_; ++k) f(i, j, k, packed_[c++]);
    }
    template <typename F>
    void for_each_packed(F&& f) const {
        Index c = 0;
        for (Index i = 0; i < dim_; ++i)
            for (Index j = i; j < dim_; ++j)
                for (Index k = j; k < dim_; ++k) f(i, j, k, packed_[c++]);
    }

    // Full-tensor Frobenius norm squared (permutations counted).
    double frobenius_norm_sq() const {
        double s = 0.0;
        for_each_packed([&](Index i, Index j, Index k, const double& v) {
            s += multiplicity(i, j, k) * v * v;
        });
        return s;
    }

    SymTensor3& operator+=(const SymTensor3& o) {
        require_same_dim(o);
        for (std::size_t c = 0; c < packed_.size(); ++c) packed_[c] += o.packed_[c];
        return *this;
    }
    SymTensor3& operator-=(const SymTensor3& o) {
        require_same_dim(o);
        for (std::size_t c = 0; c < packed_.size(); ++c) packed_[c] -= o.packed_[c];
        return *this;
    }
    SymTensor3& operator*=(double s) {
        for (double& v : packed_) v *= s;
        return *this;
    }

    bool operator==(const SymTensor3& o) const {
        return dim_ == o.dim_ && packed_ == o.packed_;
    }

private:
    static void sort3(Index& a, Index& b, Index& c) {
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
    }

    void require_same_dim(const SymTensor3& o) const {
        if (o.dim_ != dim_)
            throw DimensionMismatch("SymTensor3: dimension mismatch");
    }

    Index dim_ = 0;
    std::vector<double> packed_;
};

} // namespace trinorm
