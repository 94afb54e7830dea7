#pragma once

#include "gidkit/rational.hpp"

#include <cstddef>
#include <vector>

namespace gidkit {

using RationalRow = std::vector<Rational>;
using IntegerRow = std::vector<Integer>;

// Clears denominators and divides by the content, sign-normalized so the first nonzero entry is positive.
IntegerRow primitive_row(const RationalRow& row);

// Incremental row-echelon basis built with fraction-free elimination.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t dim) : dim_(dim) {}

    // Adds the row if it is independent of the basis; returns whether it was added.
    bool add(const RationalRow& row);
    bool in_span(const RationalRow& row) const;

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<IntegerRow>& rows() const { return rows_; }

private:
    IntegerRow reduce(IntegerRow row) const;

    std::size_t dim_;
    std::vector<IntegerRow> rows_;
    std::vector<std::size_t> pivots_;
};

std::size_t rank(const std::vector<RationalRow>& rows, std::size_t dim);

// Basis of {x : r . x = 0 for every row r}, one vector per free column in increasing order.
std::vector<RationalRow> null_space(const std::vector<RationalRow>& rows, std::size_t dim);

// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer bareiss_determinant(std::vector<IntegerRow> m);

}  // namespace gidkit
