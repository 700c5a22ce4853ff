#include "dbas/seq.hpp"

#include "dbas/codon.hpp"

namespace dbas {

namespace {

std::uint8_t symbol_from_base(char base) {
    switch (base) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: throw InvalidArgument(std::string("invalid base '") + base + "'");
    }
}

}  // namespace

Sequence::Sequence(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {
    for (std::uint8_t s : symbols_)
        if (s >= kAlphabetSize) throw InvalidArgument("sequence symbol out of range");
}

Sequence Sequence::from_string(const std::string& bases) {
    std::vector<std::uint8_t> symbols;
    symbols.reserve(bases.size());
    for (char b : bases) symbols.push_back(symbol_from_base(b));
    return Sequence(std::move(symbols));
}

std::string Sequence::to_string() const {
    std::string out;
    out.reserve(symbols_.size());
    for (std::uint8_t s : symbols_) out.push_back(kAlphabet[s]);
    return out;
}

Protein Protein::from_string(const std::string& residues) {
    static constexpr char kAllowed[] = "ACDEFGHIKLMNPQRSTVWY*";
    for (char r : residues)
        if (std::string_view(kAllowed).find(r) == std::string_view::npos)
            throw InvalidArgument(std::string("invalid residue '") + r + "'");
    return Protein(residues);
}

OneHot encode_one_hot(const Sequence& seq) {
    OneHot m(seq.length());
    for (std::size_t i = 0; i < seq.length(); ++i) m.set(i, seq[i], 1.0);
    return m;
}

Sequence decode_one_hot(const OneHot& m) {
    std::vector<std::uint8_t> symbols(m.length());
    for (std::size_t i = 0; i < m.length(); ++i) {
        double row_sum = 0.0;
        int hot = -1;
        for (std::size_t c = 0; c < kAlphabetSize; ++c) {
            const double v = m.at(i, c);
            if (v != 0.0 && v != 1.0) throw RowNotOneHot("entry not in {0,1}");
            row_sum += v;
            if (v == 1.0) hot = static_cast<int>(c);
        }
        if (row_sum != 1.0) throw RowNotOneHot("row sum != 1");
        symbols[i] = static_cast<std::uint8_t>(hot);
    }
    return Sequence(std::move(symbols));
}

Protein translate(const Sequence& dna) {
    if (dna.length() % 3 != 0)
        throw LengthNotMultipleOfThree("sequence length not divisible by 3");
    std::string residues;
    residues.reserve(dna.length() / 3);
    for (std::size_t i = 0; i < dna.length(); i += 3) {
        const unsigned codon = 16u * dna[i] + 4u * dna[i + 1] + dna[i + 2];
        residues.push_back(translate_codon(codon));
    }
    return Protein::from_string(residues);
}

std::vector<Sequence> uniform_sequences(std::size_t length, std::size_t count, Rng& rng) {
    std::vector<Sequence> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint8_t> symbols(length);
        for (std::size_t p = 0; p < length; ++p)
            symbols[p] = static_cast<std::uint8_t>(uniform_index(rng, kAlphabetSize));
        out.emplace_back(std::move(symbols));
    }
    return out;
}

}  // namespace dbas
