#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ptk/lexicon.hpp"
#include "ptk/text.hpp"

namespace ptk {

// Deterministic lemma -> bucket assignment, 1 bit per carrier token.
// Either hashed from a seed (FNV-1a of the lowercase lemma, mod 2) or an
// explicit table for reproducible experiments.
class BucketPartition {
public:
    static BucketPartition seeded(std::uint64_t seed);
    static BucketPartition from_table(std::map<std::string, int> table);

    int bucket_of(const std::string& lemma) const;
    bool covers(const std::string& lemma) const;
    bool is_seeded() const { return seeded_; }
    std::uint64_t seed() const { return seed_; }

    static constexpr int bits_per_token = 1;

private:
    bool seeded_ = true;
    std::uint64_t seed_ = 0;
    std::map<std::string, int> table_;
};

struct SecretMessage {
    std::vector<int> bits;

    static SecretMessage from_string(const std::string& zeros_and_ones);
    std::string to_string() const;
    bool operator==(const SecretMessage& other) const = default;
};

struct CarrierSlot {
    std::size_t token_index = 0;
    std::string synset_id;
};

struct CarrierMap {
    std::vector<CarrierSlot> positions;
};

struct ChannelReport {
    double p_flip = 0.0;
    std::size_t k_votes = 1;
    std::size_t trials = 0;
    double per_bit_error = 0.0;
    double exact_match_rate = 0.0;
    double analytic_per_bit_error = 0.0;
};

// Word positions whose resolved synset (lowest synset id containing the
// norm) spans both buckets under the partition.
CarrierMap carrier_positions(const Sentence& s, const Lexicon& lex, const BucketPartition& part);

std::size_t capacity(const Sentence& s, const Lexicon& lex, const BucketPartition& part);

Sentence encode(const Sentence& s, const SecretMessage& m, const Lexicon& lex,
                const BucketPartition& part);

SecretMessage decode(const Sentence& s_encoded, std::size_t n_bits, const Lexicon& lex,
                     const BucketPartition& part);

std::vector<Sentence> encode_voted(const std::vector<Sentence>& carriers, const SecretMessage& m,
                                   const Lexicon& lex, const BucketPartition& part);

SecretMessage decode_voted(const std::vector<Sentence>& encoded, std::size_t n_bits,
                           const Lexicon& lex, const BucketPartition& part);

// Binomial majority-vote error for a single-copy per-bit error q and odd k.
double majority_error(double q, std::size_t k);

ChannelReport simulate_channel(const std::vector<Sentence>& carriers, const SecretMessage& m,
                               double p_flip, std::size_t k_votes, std::size_t trials,
                               std::uint64_t rng_seed, const Lexicon& lex,
                               const BucketPartition& part);

}  // namespace ptk
