#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "dbas/seq.hpp"

namespace dbas {

/// Exact synonymous-sequence counts; 64-bit arithmetic would overflow for
/// proteins not much longer than the counts tested here.
using BigCount = boost::multiprecision::cpp_int;

/// Codon index = 16*b1 + 4*b2 + b3 with bases in A,C,G,T order.
char translate_codon(unsigned codon_index);

/// Codon indices encoding the residue, ascending ('*' gives the stop codons).
/// Throws InvalidArgument for characters outside the amino-acid alphabet.
const std::vector<unsigned>& synonymous_codons(char residue);

/// Product over residues of codon multiplicity. Throws InternalStop if the
/// protein contains '*'.
BigCount count_synonymous(const Protein& protein);

/// Uniform draw from the DNA sequences translating to the protein (each codon
/// picked uniformly among its synonyms).
Sequence sample_synonymous(const Protein& protein, Rng& rng);

}  // namespace dbas
