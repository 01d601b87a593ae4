#include "depa/matrix.hpp"

#include <algorithm>

namespace depa {

Scalar parse_scalar(const std::string& text, long long field) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(s);
            mpq_class q(n);
            Scalar out = field ? Scalar::mod(q.get_num().get_si(), field)
                               : Scalar::rational(q);
            return neg ? -out : out;
        }
        mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
        q.canonicalize();
        Scalar out;
        if (field) {
            Scalar num = Scalar::mod(q.get_num().get_si(), field);
            Scalar den = Scalar::mod(q.get_den().get_si(), field);
            out = num / den;
        } else {
            out = Scalar::rational(q);
        }
        return neg ? -out : out;
    } catch (const std::invalid_argument&) {
        throw Error("ParseError", "bad scalar literal '" + text + "'");
    }
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix product shape");
    Matrix out(rows_, o.cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero()) out.at(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("DimensionMismatch", "matrix sum shape");
    Matrix out(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error("DimensionMismatch", "matrix difference shape");
    Matrix out(rows_, cols_, field_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != o.data_[i]) return false;
    return true;
}

Vec Matrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw Error("DimensionMismatch", "matrix-vector shape");
    Vec out(rows_, Scalar::zero(field_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

std::vector<int> Matrix::rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
        int sel = -1;
        for (int i = row; i < rows_; ++i)
            if (!at(i, col).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
        Scalar piv = at(row, col).inv();
        for (int j = col; j < cols_; ++j) at(row, j) *= piv;
        for (int i = 0; i < rows_; ++i) {
            if (i == row || at(i, col).is_zero()) continue;
            Scalar f = at(i, col);
            for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int Matrix::rank() const {
    Matrix copy = *this;
    return static_cast<int>(copy.rref().size());
}

std::optional<Matrix> Matrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Matrix aug(rows_, 2 * cols_, field_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Scalar::one(field_);
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_) return std::nullopt;
    Matrix out(rows_, cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(i, j) = aug.at(i, cols_ + j);
    return out;
}

Matrix Matrix::nullspace() const {
    Matrix copy = *this;
    auto piv = copy.rref();
    std::vector<bool> is_piv(cols_, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> freecols;
    for (int c = 0; c < cols_; ++c)
        if (!is_piv[c]) freecols.push_back(c);
    Matrix out(static_cast<int>(freecols.size()), cols_, field_);
    for (size_t fi = 0; fi < freecols.size(); ++fi) {
        int fc = freecols[fi];
        out.at(static_cast<int>(fi), fc) = Scalar::one(field_);
        for (size_t r = 0; r < piv.size(); ++r)
            out.at(static_cast<int>(fi), piv[r]) = -copy.at(static_cast<int>(r), fc);
    }
    return out;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows_)
        throw Error("DimensionMismatch", "rhs length");
    Matrix aug(rows_, cols_ + 1, field_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    Vec x(cols_, Scalar::zero(field_));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), cols_);
    return x;
}

bool RowSpan::insert(Vec v) {
    v = reduce(std::move(v));
    int lead = -1;
    for (size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) { lead = static_cast<int>(j); break; }
    if (lead < 0) return false;
    Scalar inv = v[lead].inv();
    for (auto& c : v) c *= inv;
    // back-substitute the new pivot out of existing rows
    for (size_t r = 0; r < rows_.size(); ++r) {
        Scalar f = rows_[r][lead];
        if (f.is_zero()) continue;
        for (size_t j = lead; j < v.size(); ++j)
            if (!v[j].is_zero()) rows_[r][j] -= f * v[j];
    }
    auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

Vec RowSpan::reduce(Vec v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        Scalar f = v[pivots_[r]];
        if (f.is_zero()) continue;
        const Vec& row = rows_[r];
        for (size_t j = pivots_[r]; j < v.size(); ++j)
            if (!row[j].is_zero()) v[j] -= f * row[j];
    }
    return v;
}

bool RowSpan::contains(const Vec& v) const {
    Vec r = reduce(v);
    for (const auto& c : r)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace depa
