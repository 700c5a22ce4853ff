#include "dbas/codon.hpp"

#include <array>

namespace dbas {

namespace {

// Standard genetic code indexed by 16*b1 + 4*b2 + b3 in A,C,G,T base order.
constexpr char kCodonTable[65] =
    "KNKNTTTTRSRSIIMI"   // A**
    "QHQHPPPPRRRRLLLL"   // C**
    "EDEDAAAAGGGGVVVV"   // G**
    "*Y*YSSSS*CWCLFLF";  // T**

std::array<std::vector<unsigned>, 128> build_synonym_lists() {
    std::array<std::vector<unsigned>, 128> lists{};
    for (unsigned codon = 0; codon < 64; ++codon)
        lists[static_cast<unsigned char>(kCodonTable[codon])].push_back(codon);
    return lists;
}

const std::array<std::vector<unsigned>, 128>& synonym_lists() {
    static const auto lists = build_synonym_lists();
    return lists;
}

}  // namespace

char translate_codon(unsigned codon_index) {
    if (codon_index >= 64) throw InvalidArgument("codon index out of range");
    return kCodonTable[codon_index];
}

const std::vector<unsigned>& synonymous_codons(char residue) {
    const auto& lists = synonym_lists();
    const auto& list = lists[static_cast<unsigned char>(residue)];
    if (list.empty()) throw InvalidArgument(std::string("unknown residue '") + residue + "'");
    return list;
}

BigCount count_synonymous(const Protein& protein) {
    if (protein.has_stop()) throw InternalStop("protein contains an internal stop");
    BigCount count = 1;
    for (char r : protein.residues()) count *= synonymous_codons(r).size();
    return count;
}

Sequence sample_synonymous(const Protein& protein, Rng& rng) {
    if (protein.has_stop()) throw InternalStop("protein contains an internal stop");
    std::vector<std::uint8_t> symbols;
    symbols.reserve(protein.length() * 3);
    for (char r : protein.residues()) {
        const auto& codons = synonymous_codons(r);
        const unsigned codon = codons[uniform_index(rng, codons.size())];
        symbols.push_back(static_cast<std::uint8_t>(codon >> 4));
        symbols.push_back(static_cast<std::uint8_t>((codon >> 2) & 3u));
        symbols.push_back(static_cast<std::uint8_t>(codon & 3u));
    }
    return Sequence(std::move(symbols));
}

}  // namespace dbas
