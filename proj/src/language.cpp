#include "ptkit/language.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <utility>

#include "ptkit/errors.hpp"

namespace ptkit {

namespace {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

struct EliminationResult {
    std::size_t rank = 0;
    rational det = 0;  // meaningful for square matrices only
};

// Exact Gaussian elimination over the rationals.
EliminationResult eliminate(const std::vector<std::vector<std::int64_t>>& entries) {
    const std::size_t rows = entries.size();
    const std::size_t cols = rows ? entries.front().size() : 0;
    std::vector<std::vector<rational>> m(rows, std::vector<rational>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m[r][c] = entries[r][c];

    EliminationResult res;
    res.det = 1;
    int sign = 1;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows; ++col) {
        std::size_t pivot = lead;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != lead) {
            std::swap(m[pivot], m[lead]);
            sign = -sign;
        }
        res.det *= m[lead][col];
        for (std::size_t r = lead + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const rational factor = m[r][col] / m[lead][col];
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] -= factor * m[lead][c];
        }
        ++lead;
    }
    res.rank = lead;
    if (rows != cols || res.rank < rows) res.det = 0;
    else res.det *= sign;
    return res;
}

void require_shape(const TranslationMatrix& m) {
    for (const auto& row : m.entries)
        if (row.size() != m.cols())
            fail("ParseError", "ragged matrix " + m.from_vocab + "->" + m.to_vocab);
}

} // namespace

const char* matrix_class_name(MatrixClass c) {
    switch (c) {
        case MatrixClass::Bijective: return "bijective";
        case MatrixClass::OneWay: return "one-way";
        case MatrixClass::Lossy: return "lossy";
    }
    return "lossy";
}

BodyVector translate(const BodyVector& v, const TranslationMatrix& m) {
    if (v.vocab != m.from_vocab)
        fail("VocabMismatch", "vector speaks '" + v.vocab + "' but the matrix translates from '" +
                                  m.from_vocab + "'");
    if (v.coeffs.size() != m.cols())
        fail("VocabMismatch", "vector has " + std::to_string(v.coeffs.size()) +
                                  " coefficients, matrix expects " + std::to_string(m.cols()));
    BodyVector out;
    out.vocab = m.to_vocab;
    out.coeffs.assign(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out.coeffs[r] += m.entries[r][c] * v.coeffs[c];
    return out;
}

Classification classify(const TranslationMatrix& m) {
    require_shape(m);
    const auto elim = eliminate(m.entries);
    Classification out;
    out.rank = elim.rank;
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == cols && rows > 0 && (elim.det == 1 || elim.det == -1)) {
        // Unimodular: the inverse is itself an integer translation table.
        out.cls = MatrixClass::Bijective;
    } else if (elim.rank == std::min(rows, cols) && elim.rank > 0) {
        out.cls = MatrixClass::OneWay;
    } else {
        out.cls = MatrixClass::Lossy;
    }
    return out;
}

bool unitarity_check(const TranslationMatrix& forth, const TranslationMatrix& back) {
    require_shape(forth);
    require_shape(back);
    if (back.cols() != forth.rows() || back.rows() != forth.cols())
        fail("ShapeMismatch", "matrices " + forth.from_vocab + "->" + forth.to_vocab + " and " +
                                  back.from_vocab + "->" + back.to_vocab + " do not compose");
    // back * forth must be the identity on forth's source vocabulary.
    const std::size_t n = forth.cols();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            bigint sum = 0;
            for (std::size_t k = 0; k < forth.rows(); ++k)
                sum += bigint(back.entries[r][k]) * bigint(forth.entries[k][c]);
            if (sum != (r == c ? 1 : 0)) return false;
        }
    }
    return true;
}

std::vector<std::string> colanguage(const Vocabulary& a, const Vocabulary& b) {
    std::vector<std::string> left = a.symbols, right = b.symbols, out;
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                          std::back_inserter(out));
    return out;
}

} // namespace ptkit
