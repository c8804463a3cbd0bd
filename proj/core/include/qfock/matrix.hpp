#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qfock/error.hpp"
#include "qfock/laurent.hpp"

namespace qfock {

template <typename T>
inline bool scalar_is_zero(const T& v) { return v == T(0); }
inline bool scalar_is_zero(const LaurentPoly& v) { return v.is_zero(); }
inline bool scalar_is_zero(double v) { return v == 0.0; }

/**
 * Sparse matrix with row-major ordered storage and no stored zeros.
 * Arithmetic is exact for exact scalar types; all values are immutable
 * in practice (operations return new matrices).
 */
template <typename T>
class SparseMatrix {
public:
    using Key = std::pair<int, int>;
    using EntryMap = std::map<Key, T>;

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw Error(ErrorCode::Domain, "negative matrix dimension");
    }

    static SparseMatrix identity(int d) {
        SparseMatrix out(d, d);
        for (int k = 0; k < d; ++k) out.entries_.emplace(Key{k, k}, T(1));
        return out;
    }

    static SparseMatrix diagonal(const std::vector<T>& values) {
        SparseMatrix out(static_cast<int>(values.size()), static_cast<int>(values.size()));
        for (int k = 0; k < static_cast<int>(values.size()); ++k) out.set(k, k, values[k]);
        return out;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const EntryMap& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void set(int r, int c, const T& v) {
        check_index(r, c);
        if (scalar_is_zero(v))
            entries_.erase(Key{r, c});
        else
            entries_[Key{r, c}] = v;
    }

    void add(int r, int c, const T& v) {
        check_index(r, c);
        auto it = entries_.find(Key{r, c});
        if (it == entries_.end()) {
            if (!scalar_is_zero(v)) entries_.emplace(Key{r, c}, v);
            return;
        }
        it->second += v;
        if (scalar_is_zero(it->second)) entries_.erase(it);
    }

    T get(int r, int c) const {
        check_index(r, c);
        auto it = entries_.find(Key{r, c});
        return it == entries_.end() ? T(0) : it->second;
    }

    SparseMatrix& operator+=(const SparseMatrix& rhs) {
        require_same_shape(rhs);
        for (const auto& [k, v] : rhs.entries_) add(k.first, k.second, v);
        return *this;
    }

    SparseMatrix& operator-=(const SparseMatrix& rhs) {
        require_same_shape(rhs);
        for (const auto& [k, v] : rhs.entries_) add(k.first, k.second, -v);
        return *this;
    }

    friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
    friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }

    SparseMatrix operator-() const {
        SparseMatrix out(rows_, cols_);
        for (const auto& [k, v] : entries_) out.entries_.emplace(k, -v);
        return out;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::Domain, "matrix shape mismatch in product");
        SparseMatrix out(a.rows_, b.cols_);
        for (const auto& [ka, va] : a.entries_) {
            const int i = ka.first;
            const int k = ka.second;
            auto lo = b.entries_.lower_bound(Key{k, 0});
            auto hi = b.entries_.lower_bound(Key{k + 1, 0});
            for (auto it = lo; it != hi; ++it) out.add(i, it->first.second, va * it->second);
        }
        return out;
    }

    SparseMatrix scaled(const T& factor) const {
        SparseMatrix out(rows_, cols_);
        if (scalar_is_zero(factor)) return out;
        for (const auto& [k, v] : entries_) out.set(k.first, k.second, factor * v);
        return out;
    }

    SparseMatrix transpose() const {
        SparseMatrix out(cols_, rows_);
        for (const auto& [k, v] : entries_) out.entries_.emplace(Key{k.second, k.first}, v);
        return out;
    }

    /// Entrywise image under f; drops entries that map to zero.
    template <typename F>
    auto map(F&& f) const -> SparseMatrix<decltype(f(std::declval<const T&>()))> {
        using U = decltype(f(std::declval<const T&>()));
        SparseMatrix<U> out(rows_, cols_);
        for (const auto& [k, v] : entries_) out.set(k.first, k.second, f(v));
        return out;
    }

    std::vector<std::pair<int, T>> column(int c) const {
        std::vector<std::pair<int, T>> out;
        for (const auto& [k, v] : entries_)
            if (k.second == c) out.emplace_back(k.first, v);
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw Error(ErrorCode::IndexRange,
                        "entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    void require_same_shape(const SparseMatrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw Error(ErrorCode::Domain, "matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    EntryMap entries_;
};

inline double max_abs(const SparseMatrix<double>& m) {
    double out = 0.0;
    for (const auto& [k, v] : m.entries()) out = std::max(out, std::abs(v));
    return out;
}

} // namespace qfock
