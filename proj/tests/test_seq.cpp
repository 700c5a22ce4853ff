#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "dbas/codon.hpp"
#include "dbas/seq.hpp"
#include "test_support.hpp"

using namespace dbas;

TEST_CASE("encode_one_hot basic layouts") {
    const OneHot id4 = encode_one_hot(Sequence::from_string("ACGT"));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) CHECK(id4.at(r, c) == (r == c ? 1.0 : 0.0));

    const OneHot aa = encode_one_hot(Sequence::from_string("AA"));
    for (std::size_t r = 0; r < 2; ++r) {
        CHECK(aa.at(r, 0) == 1.0);
        CHECK(aa.at(r, 1) == 0.0);
        CHECK(aa.at(r, 2) == 0.0);
        CHECK(aa.at(r, 3) == 0.0);
    }
}

TEST_CASE("decode_one_hot inverts and rejects malformed rows") {
    OneHot id4(4);
    for (std::size_t r = 0; r < 4; ++r) id4.set(r, r, 1.0);
    CHECK(decode_one_hot(id4).to_string() == "ACGT");

    OneHot g(1);
    g.set(0, 2, 1.0);
    CHECK(decode_one_hot(g).to_string() == "G");

    OneHot bad(1);
    bad.set(0, 0, 1.0);
    bad.set(0, 1, 1.0);
    CHECK_THROWS_AS(decode_one_hot(bad), RowNotOneHot);

    OneHot zero(1);
    CHECK_THROWS_AS(decode_one_hot(zero), RowNotOneHot);
}

TEST_CASE("encode/decode round-trip: random at L=10, exhaustive at L<=6") {
    Rng rng = make_rng(7);
    for (int i = 0; i < 100; ++i) {
        const Sequence s = uniform_sequences(10, 1, rng).front();
        CHECK(decode_one_hot(encode_one_hot(s)) == s);
    }
    for (std::size_t length = 1; length <= 6; ++length) {
        std::size_t n = 0;
        testref::for_each_sequence(length, [&](const Sequence& s) {
            ++n;
            REQUIRE(decode_one_hot(encode_one_hot(s)) == s);
        });
        CHECK(n == (1u << (2 * length)));
    }
}

TEST_CASE("translate agrees with the published code on all 64 codons") {
    CHECK(translate(Sequence::from_string("ATGGCT")).residues() == "MA");
    CHECK(translate(Sequence::from_string("TAA")).residues() == "*");
    CHECK_THROWS_AS(translate(Sequence::from_string("ACGT")), LengthNotMultipleOfThree);

    const std::string bases = "ACGT";
    for (char b1 : bases)
        for (char b2 : bases)
            for (char b3 : bases) {
                const std::string codon{b1, b2, b3};
                const char expected = testref::translate_codon_tcag(b1, b2, b3);
                CHECK(translate(Sequence::from_string(codon)).residues()[0] == expected);
            }
}

TEST_CASE("count_synonymous: degeneracies and the 32-residue target") {
    CHECK(count_synonymous(Protein::from_string("M")) == 1);
    CHECK(count_synonymous(Protein::from_string("L")) == 6);
    const Protein target = Protein::from_string("SNILHPLFAVVVVHWSPLKIPSRWKIGVRQYV");
    CHECK(count_synonymous(target) == BigCount("48693796581408768"));
    CHECK_THROWS_AS(count_synonymous(Protein::from_string("M*A")), InternalStop);
}

TEST_CASE("count_synonymous equals brute-force enumeration up to protein length 4") {
    for (std::size_t residues = 1; residues <= 4; ++residues) {
        std::map<std::string, long long> tally;
        testref::for_each_sequence(3 * residues, [&](const Sequence& s) {
            ++tally[translate(s).residues()];
        });
        for (const auto& [protein, count] : tally) {
            if (protein.find('*') != std::string::npos) continue;
            CHECK(count_synonymous(Protein::from_string(protein)) == BigCount(count));
        }
    }
}

TEST_CASE("synonymous witnesses of the target translate back to it") {
    const Protein target = Protein::from_string("SNILHPLFAVVVVHWSPLKIPSRWKIGVRQYV");
    Rng rng = make_rng(11);
    for (int i = 0; i < 20; ++i) {
        const Sequence dna = sample_synonymous(target, rng);
        CHECK(dna.length() == 96);
        CHECK(translate(dna) == target);
    }
}

TEST_CASE("sequence string validation") {
    CHECK_THROWS_AS(Sequence::from_string("ACGX"), InvalidArgument);
    CHECK_THROWS_AS(Protein::from_string("MAB"), InvalidArgument);
    CHECK(Sequence::from_string("").length() == 0);
}
