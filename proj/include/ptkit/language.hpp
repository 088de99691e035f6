#pragma once

// Vocabularies, linear body decomposition, translation matrices and their
// classification. Rank and invertibility are decided in exact rational
// arithmetic so classification is bit-stable.

#include <cstdint>
#include <string>
#include <vector>

namespace ptkit {

struct Vocabulary {
    std::string id;
    std::vector<std::string> symbols;  // distinct, ordered

    std::size_t dimension() const { return symbols.size(); }

    bool operator==(const Vocabulary&) const = default;
};

// A body decomposed over a vocabulary: coeffs[i] is the multiplicity of
// symbols[i].
struct BodyVector {
    std::string vocab;
    std::vector<std::int64_t> coeffs;

    bool operator==(const BodyVector&) const = default;
};

// Word-for-word translation table. entries is (to dimension) x (from
// dimension); row r lists how much of to_vocab symbol r each from_vocab
// symbol contributes.
struct TranslationMatrix {
    std::string from_vocab;
    std::string to_vocab;
    std::vector<std::vector<std::int64_t>> entries;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }

    bool operator==(const TranslationMatrix&) const = default;
};

enum class MatrixClass {
    Bijective,  // square with a two-sided integer inverse (unimodular)
    OneWay,     // full rank but not invertible both ways
    Lossy,      // rank deficient
};

struct Classification {
    MatrixClass cls = MatrixClass::Lossy;
    std::size_t rank = 0;
};

const char* matrix_class_name(MatrixClass c);

// Matrix-vector product over the integers. Errors: VocabMismatch.
BodyVector translate(const BodyVector& v, const TranslationMatrix& m);

Classification classify(const TranslationMatrix& m);

// True iff back * forth is the identity on forth's source vocabulary.
// Errors: ShapeMismatch.
bool unitarity_check(const TranslationMatrix& forth, const TranslationMatrix& back);

// Literal symbol intersection of two vocabularies, sorted.
std::vector<std::string> colanguage(const Vocabulary& a, const Vocabulary& b);

} // namespace ptkit
