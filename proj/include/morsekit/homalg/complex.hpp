#pragma once

#include "morsekit/error.hpp"
#include "morsekit/homalg/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace morsekit::homalg {

/// Finitely generated free chain complex with labeled bases in degrees
/// 0..top_degree(). boundary(k) maps C_k to C_{k-1}: its columns are indexed
/// by basis(k) and its rows by basis(k-1).
template <class T>
class BasedComplex {
public:
    BasedComplex() = default;

    /// `boundaries[k-1]` is the boundary out of degree k, for k = 1..bases.size()-1.
    BasedComplex(std::vector<std::vector<std::string>> bases, std::vector<Matrix<T>> boundaries)
        : bases_(std::move(bases)), boundaries_(std::move(boundaries)) {
        while (boundaries_.size() + 1 < bases_.size()) {
            const auto k = boundaries_.size() + 1;
            boundaries_.emplace_back(bases_[k - 1].size(), bases_[k].size());
        }
        if (!bases_.empty() && boundaries_.size() + 1 != bases_.size())
            fail(ErrorCode::InvalidArgument, "boundary count does not match the number of degrees");
        for (std::size_t k = 1; k < bases_.size(); ++k) {
            const auto& d = boundaries_[k - 1];
            if (d.rows() != bases_[k - 1].size() || d.cols() != bases_[k].size())
                fail(ErrorCode::InvalidArgument, "boundary in degree " + std::to_string(k) + " has the wrong shape");
        }
    }

    /// -1 for the empty complex.
    int top_degree() const { return static_cast<int>(bases_.size()) - 1; }

    const std::vector<std::string>& basis(int k) const {
        static const std::vector<std::string> kEmpty;
        if (k < 0 || k > top_degree()) return kEmpty;
        return bases_[static_cast<std::size_t>(k)];
    }

    std::size_t rank(int k) const { return basis(k).size(); }

    std::size_t total_rank() const {
        std::size_t n = 0;
        for (const auto& b : bases_) n += b.size();
        return n;
    }

    Matrix<T> boundary(int k) const {
        if (k >= 1 && k <= top_degree()) return boundaries_[static_cast<std::size_t>(k - 1)];
        return Matrix<T>(rank(k - 1), rank(k));
    }

    const std::vector<std::vector<std::string>>& bases() const { return bases_; }

    /// Throws BoundarySquareNonzero unless every composite boundary vanishes to `order`.
    void check_square_zero(int order = rings::kExact) const {
        for (int k = 2; k <= top_degree(); ++k) {
            const auto sq = boundary(k - 1) * boundary(k);
            for (std::size_t i = 0; i < sq.rows(); ++i)
                for (std::size_t j = 0; j < sq.cols(); ++j)
                    if (!vanishes_to(sq(i, j), order))
                        fail(ErrorCode::BoundarySquareNonzero, "d" + std::to_string(k - 1) + " o d" + std::to_string(k) + " is nonzero at (" +
                                                                   basis(k - 2)[i] + ", " + basis(k)[j] + ")");
        }
    }

    /// Same labels, same entries to `order`.
    friend bool basis_preserving_equal(const BasedComplex& a, const BasedComplex& b, int order = rings::kExact) {
        if (a.bases_ != b.bases_) return false;
        for (int k = 1; k <= a.top_degree(); ++k)
            if (!equal_to_order(a.boundary(k), b.boundary(k), order)) return false;
        return true;
    }

    template <class Fn>
    auto map_entries(Fn&& fn) const -> BasedComplex<decltype(fn(std::declval<const T&>()))> {
        using U = decltype(fn(std::declval<const T&>()));
        std::vector<Matrix<U>> d;
        for (const auto& m : boundaries_) d.push_back(m.map(fn));
        return BasedComplex<U>(bases_, std::move(d));
    }

private:
    std::vector<std::vector<std::string>> bases_;
    std::vector<Matrix<T>> boundaries_;
};

/// Degree-preserving map of based complexes; component(k) maps C_k to D_k.
template <class T>
class ChainMap {
public:
    ChainMap() = default;

    ChainMap(BasedComplex<T> source, BasedComplex<T> target, std::vector<Matrix<T>> components)
        : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
        const int top = std::max(source_.top_degree(), target_.top_degree());
        components_.resize(static_cast<std::size_t>(std::max(top + 1, 0)));
        for (int k = 0; k <= top; ++k) {
            auto& m = components_[static_cast<std::size_t>(k)];
            if (m.rows() == 0 && m.cols() == 0) m = Matrix<T>(target_.rank(k), source_.rank(k));
            if (m.rows() != target_.rank(k) || m.cols() != source_.rank(k))
                fail(ErrorCode::InvalidArgument, "chain map component in degree " + std::to_string(k) + " has the wrong shape");
        }
    }

    static ChainMap identity(const BasedComplex<T>& c) {
        std::vector<Matrix<T>> comps;
        for (int k = 0; k <= c.top_degree(); ++k) comps.push_back(Matrix<T>::identity(c.rank(k)));
        return ChainMap(c, c, std::move(comps));
    }

    static ChainMap zero(const BasedComplex<T>& source, const BasedComplex<T>& target) { return ChainMap(source, target, {}); }

    const BasedComplex<T>& source() const { return source_; }
    const BasedComplex<T>& target() const { return target_; }
    int top_degree() const { return static_cast<int>(components_.size()) - 1; }

    Matrix<T> component(int k) const {
        if (k >= 0 && k <= top_degree()) return components_[static_cast<std::size_t>(k)];
        return Matrix<T>(target_.rank(k), source_.rank(k));
    }

    /// Throws ChainMapViolation unless d^target F = F d^source to `order` in every degree.
    void check(int order = rings::kExact) const {
        for (int k = 1; k <= top_degree(); ++k) {
            const auto lhs = target_.boundary(k) * component(k);
            const auto rhs = component(k - 1) * source_.boundary(k);
            for (std::size_t i = 0; i < lhs.rows(); ++i)
                for (std::size_t j = 0; j < lhs.cols(); ++j)
                    if (!equal_to_order(lhs(i, j), rhs(i, j), order))
                        fail(ErrorCode::ChainMapViolation, "dF != Fd in degree " + std::to_string(k) + " at (" + target_.basis(k - 1)[i] + ", " +
                                                               source_.basis(k)[j] + ")");
        }
    }

    bool is_chain_map(int order = rings::kExact) const {
        try {
            check(order);
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    /// this ∘ g
    ChainMap after(const ChainMap& g) const {
        std::vector<Matrix<T>> comps;
        const int top = std::max(top_degree(), g.top_degree());
        for (int k = 0; k <= top; ++k) comps.push_back(component(k) * g.component(k));
        return ChainMap(g.source(), target_, std::move(comps));
    }

private:
    BasedComplex<T> source_;
    BasedComplex<T> target_;
    std::vector<Matrix<T>> components_;
};

/// Mapping cone: Cone_k = C_{k-1} ⊕ D_k with d(c, d) = (-dc, f(c) + dd).
/// Shifted source labels are prefixed "s:", target labels "t:".
template <class T>
BasedComplex<T> mapping_cone(const ChainMap<T>& f) {
    const auto& src = f.source();
    const auto& tgt = f.target();
    const int top = std::max(src.top_degree() + 1, tgt.top_degree());
    std::vector<std::vector<std::string>> bases;
    for (int k = 0; k <= top; ++k) {
        std::vector<std::string> b;
        for (const auto& l : src.basis(k - 1)) b.push_back("s:" + l);
        for (const auto& l : tgt.basis(k)) b.push_back("t:" + l);
        bases.push_back(std::move(b));
    }
    std::vector<Matrix<T>> d;
    for (int k = 1; k <= top; ++k) {
        const std::size_t cs = src.rank(k - 1), ct = tgt.rank(k);
        const std::size_t rs = src.rank(k - 2), rt = tgt.rank(k - 1);
        Matrix<T> m(rs + rt, cs + ct);
        const auto dsrc = src.boundary(k - 1);
        const auto dtgt = tgt.boundary(k);
        const auto fk = f.component(k - 1);
        for (std::size_t i = 0; i < rs; ++i)
            for (std::size_t j = 0; j < cs; ++j) m(i, j) = -dsrc(i, j);
        for (std::size_t i = 0; i < rt; ++i)
            for (std::size_t j = 0; j < cs; ++j) m(rs + i, j) = fk(i, j);
        for (std::size_t i = 0; i < rt; ++i)
            for (std::size_t j = 0; j < ct; ++j) m(rs + i, cs + j) = dtgt(i, j);
        d.push_back(std::move(m));
    }
    return BasedComplex<T>(std::move(bases), std::move(d));
}

} // namespace morsekit::homalg
