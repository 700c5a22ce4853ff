#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dbas/errors.hpp"
#include "dbas/rng.hpp"

namespace dbas {

inline constexpr std::size_t kAlphabetSize = 4;
inline constexpr char kAlphabet[] = "ACGT";  // symbol index -> base

/// DNA sequence stored as alphabet indices in [0, 3] (A=0, C=1, G=2, T=3).
class Sequence {
public:
    Sequence() = default;
    explicit Sequence(std::vector<std::uint8_t> symbols);

    static Sequence from_string(const std::string& bases);
    std::string to_string() const;

    std::size_t length() const { return symbols_.size(); }
    std::uint8_t operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

    bool operator==(const Sequence&) const = default;
    auto operator<=>(const Sequence&) const = default;

private:
    std::vector<std::uint8_t> symbols_;
};

/// L x 4 indicator matrix; every row sums to one. Stored flat row-major so it
/// can feed an oracle input layer without reshaping.
class OneHot {
public:
    explicit OneHot(std::size_t length) : data_(length * kAlphabetSize, 0.0) {}

    std::size_t length() const { return data_.size() / kAlphabetSize; }
    double at(std::size_t row, std::size_t col) const { return data_[row * kAlphabetSize + col]; }
    void set(std::size_t row, std::size_t col, double v) { data_[row * kAlphabetSize + col] = v; }
    const std::vector<double>& flat() const { return data_; }

private:
    std::vector<double> data_;
};

/// Amino-acid string over the 20-letter alphabet plus '*' for stop.
class Protein {
public:
    static constexpr char kStop = '*';

    Protein() = default;
    static Protein from_string(const std::string& residues);
    const std::string& residues() const { return residues_; }
    std::size_t length() const { return residues_.size(); }
    bool has_stop() const { return residues_.find(kStop) != std::string::npos; }

    bool operator==(const Protein&) const = default;

private:
    explicit Protein(std::string residues) : residues_(std::move(residues)) {}
    std::string residues_;
};

OneHot encode_one_hot(const Sequence& seq);
Sequence decode_one_hot(const OneHot& m);

/// Codon-by-codon translation under the standard genetic code; stop codons
/// become '*'. Throws LengthNotMultipleOfThree.
Protein translate(const Sequence& dna);

/// M uniform random sequences of the given length.
std::vector<Sequence> uniform_sequences(std::size_t length, std::size_t count, Rng& rng);

}  // namespace dbas
