#include "gidkit/linalg.hpp"

#include "gidkit/error.hpp"

#include <utility>

namespace gidkit {

namespace {

void make_primitive(IntegerRow& row) {
    Integer g = 0;
    for (const auto& x : row) g = gcd(g, x);
    if (g == 0) return;
    std::size_t lead = 0;
    while (row[lead] == 0) ++lead;
    if (row[lead] < 0) g = -g;
    for (auto& x : row) x /= g;
}

}  // namespace

IntegerRow primitive_row(const RationalRow& row) {
    Integer l = 1;
    for (const auto& x : row) l = lcm(l, x.get_den());
    IntegerRow out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].get_num() * (l / row[i].get_den());
    make_primitive(out);
    return out;
}

IntegerRow IntegerEchelon::reduce(IntegerRow row) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if (row[p] == 0) continue;
        const Integer a = rows_[i][p], b = row[p];
        for (std::size_t c = 0; c < dim_; ++c) row[c] = a * row[c] - b * rows_[i][c];
        make_primitive(row);
    }
    return row;
}

bool IntegerEchelon::add(const RationalRow& row) {
    if (row.size() != dim_) throw Error(ErrorKind::InvalidArgument, "row has wrong dimension");
    IntegerRow r = reduce(primitive_row(row));
    std::size_t p = 0;
    while (p < dim_ && r[p] == 0) ++p;
    if (p == dim_) return false;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

bool IntegerEchelon::in_span(const RationalRow& row) const {
    if (row.size() != dim_) throw Error(ErrorKind::InvalidArgument, "row has wrong dimension");
    for (const auto& x : reduce(primitive_row(row)))
        if (x != 0) return false;
    return true;
}

std::size_t rank(const std::vector<RationalRow>& rows, std::size_t dim) {
    IntegerEchelon e(dim);
    for (const auto& r : rows) e.add(r);
    return e.rank();
}

std::vector<RationalRow> null_space(const std::vector<RationalRow>& rows, std::size_t dim) {
    IntegerEchelon e(dim);
    for (const auto& r : rows) e.add(r);

    // Gauss-Jordan on the (small) independent basis.
    std::vector<RationalRow> m;
    for (const auto& r : e.rows()) {
        RationalRow q(dim);
        for (std::size_t c = 0; c < dim; ++c) q[c] = r[c];
        m.push_back(std::move(q));
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Rational lead = m[row][col];
        for (auto& x : m[row]) x /= lead;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = 0; c < dim; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(dim, false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    std::vector<RationalRow> basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) continue;
        RationalRow v(dim, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

Integer bareiss_determinant(std::vector<IntegerRow> m) {
    const std::size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace gidkit
