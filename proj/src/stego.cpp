#include "ptk/stego.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "ptk/errors.hpp"
#include "ptk/taxonomy.hpp"

namespace ptk {

namespace {

std::optional<std::string> resolve_synset(const std::string& norm, const Lexicon& lex) {
    auto ids = lex.synsets_of(norm);
    if (ids.empty()) return std::nullopt;
    return *std::min_element(ids.begin(), ids.end());
}

std::string transfer_case(const std::string& original, std::string replacement) {
    if (!original.empty() && std::isupper(static_cast<unsigned char>(original[0])) &&
        !replacement.empty()) {
        replacement[0] =
            static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
    }
    return replacement;
}

void replace_token(Sentence& s, std::size_t index, const std::string& lemma) {
    Token& t = s.tokens[index];
    std::string surf = transfer_case(t.surface, lemma);
    t.norm = lowercase(surf);
    t.is_word = !is_punctuation_only(surf);
    t.surface = std::move(surf);
}

}  // namespace

BucketPartition BucketPartition::seeded(std::uint64_t seed) {
    BucketPartition p;
    p.seeded_ = true;
    p.seed_ = seed;
    return p;
}

BucketPartition BucketPartition::from_table(std::map<std::string, int> table) {
    BucketPartition p;
    p.seeded_ = false;
    p.table_ = std::move(table);
    return p;
}

int BucketPartition::bucket_of(const std::string& lemma) const {
    const std::string lower = lowercase(lemma);
    if (!seeded_) {
        auto it = table_.find(lower);
        if (it == table_.end()) {
            throw ConfigError("explicit partition table does not cover lemma: " + lower);
        }
        return it->second;
    }
    // Seed bytes are folded in ahead of the lemma so distinct seeds yield
    // distinct partitions.
    std::string data;
    data.reserve(8 + lower.size());
    for (int i = 0; i < 8; ++i) data.push_back(static_cast<char>((seed_ >> (8 * i)) & 0xff));
    data += lower;
    return static_cast<int>(fnv1a64(data) & 1u);
}

bool BucketPartition::covers(const std::string& lemma) const {
    return seeded_ || table_.count(lowercase(lemma)) > 0;
}

SecretMessage SecretMessage::from_string(const std::string& zeros_and_ones) {
    SecretMessage m;
    m.bits.reserve(zeros_and_ones.size());
    for (char c : zeros_and_ones) {
        if (c != '0' && c != '1') throw ConfigError("secret must be a {0,1} string");
        m.bits.push_back(c - '0');
    }
    return m;
}

std::string SecretMessage::to_string() const {
    std::string out;
    out.reserve(bits.size());
    for (int b : bits) out.push_back(static_cast<char>('0' + b));
    return out;
}

CarrierMap carrier_positions(const Sentence& s, const Lexicon& lex, const BucketPartition& part) {
    CarrierMap map;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Token& t = s.tokens[i];
        if (!t.is_word) continue;
        auto sid = resolve_synset(t.norm, lex);
        if (!sid) continue;
        const auto* members = lex.synset(*sid);
        // Synsets entirely outside an explicit table are simply not carriers;
        // covering only part of a synset is a configuration mistake.
        std::size_t covered = 0;
        for (const auto& m : *members) covered += part.covers(m) ? 1 : 0;
        if (covered == 0) continue;
        if (covered < members->size()) {
            throw ConfigError("explicit partition table covers synset " + *sid +
                              " only partially");
        }
        bool seen[2] = {false, false};
        for (const auto& m : *members) seen[part.bucket_of(m)] = true;
        if (seen[0] && seen[1]) map.positions.push_back({i, *sid});
    }
    return map;
}

std::size_t capacity(const Sentence& s, const Lexicon& lex, const BucketPartition& part) {
    return carrier_positions(s, lex, part).positions.size() *
           static_cast<std::size_t>(BucketPartition::bits_per_token);
}

Sentence encode(const Sentence& s, const SecretMessage& m, const Lexicon& lex,
                const BucketPartition& part) {
    CarrierMap map = carrier_positions(s, lex, part);
    if (map.positions.size() < m.bits.size()) {
        throw InsufficientCapacity(m.bits.size(), map.positions.size());
    }
    Sentence out = s;
    for (std::size_t b = 0; b < m.bits.size(); ++b) {
        const CarrierSlot& slot = map.positions[b];
        const int want = m.bits[b];
        if (part.bucket_of(out.tokens[slot.token_index].norm) == want) continue;
        const auto* members = lex.synset(slot.synset_id);
        for (const auto& candidate : *members) {
            if (part.bucket_of(candidate) == want) {
                replace_token(out, slot.token_index, candidate);
                break;
            }
        }
    }
    out.source_text = detokenize(out);
    return out;
}

SecretMessage decode(const Sentence& s_encoded, std::size_t n_bits, const Lexicon& lex,
                     const BucketPartition& part) {
    CarrierMap map = carrier_positions(s_encoded, lex, part);
    if (map.positions.size() < n_bits) {
        throw InsufficientCapacity(n_bits, map.positions.size());
    }
    SecretMessage m;
    m.bits.reserve(n_bits);
    for (std::size_t b = 0; b < n_bits; ++b) {
        m.bits.push_back(part.bucket_of(s_encoded.tokens[map.positions[b].token_index].norm));
    }
    return m;
}

std::vector<Sentence> encode_voted(const std::vector<Sentence>& carriers, const SecretMessage& m,
                                   const Lexicon& lex, const BucketPartition& part) {
    if (carriers.size() % 2 == 0) throw EvenVoteCount(carriers.size());
    std::vector<Sentence> out;
    out.reserve(carriers.size());
    for (const auto& c : carriers) out.push_back(encode(c, m, lex, part));
    return out;
}

SecretMessage decode_voted(const std::vector<Sentence>& encoded, std::size_t n_bits,
                           const Lexicon& lex, const BucketPartition& part) {
    if (encoded.size() % 2 == 0) throw EvenVoteCount(encoded.size());
    std::vector<SecretMessage> votes;
    votes.reserve(encoded.size());
    for (const auto& s : encoded) votes.push_back(decode(s, n_bits, lex, part));
    SecretMessage out;
    out.bits.reserve(n_bits);
    for (std::size_t b = 0; b < n_bits; ++b) {
        std::size_t ones = 0;
        for (const auto& v : votes) ones += static_cast<std::size_t>(v.bits[b]);
        out.bits.push_back(ones * 2 > votes.size() ? 1 : 0);
    }
    return out;
}

double majority_error(double q, std::size_t k) {
    // P(more than k/2 copies flipped), binomial tail.
    double total = 0.0;
    for (std::size_t j = k / 2 + 1; j <= k; ++j) {
        double c = 1.0;
        for (std::size_t t = 0; t < j; ++t) {
            c *= static_cast<double>(k - t) / static_cast<double>(t + 1);
        }
        total += c * std::pow(q, static_cast<double>(j)) *
                 std::pow(1.0 - q, static_cast<double>(k - j));
    }
    return total;
}

namespace {

// Probability that noise moves the encoded token at `slot` into the wrong
// bucket: p_flip times the wrong-bucket fraction among its alternatives.
double slot_flip_probability(const Sentence& encoded, const CarrierSlot& slot, int wanted_bit,
                             double p_flip, const Lexicon& lex, const BucketPartition& part) {
    const std::string& occupant = encoded.tokens[slot.token_index].norm;
    const auto* members = lex.synset(slot.synset_id);
    std::size_t alternatives = 0;
    std::size_t wrong = 0;
    for (const auto& m : *members) {
        if (m == occupant) continue;
        ++alternatives;
        if (part.bucket_of(m) != wanted_bit) ++wrong;
    }
    if (alternatives == 0) return 0.0;
    return p_flip * static_cast<double>(wrong) / static_cast<double>(alternatives);
}

// Majority error across independent copies with heterogeneous flip
// probabilities, by exact convolution.
double heterogeneous_majority_error(const std::vector<double>& qs) {
    std::vector<double> dist = {1.0};  // dist[w] = P(w copies wrong)
    for (double q : qs) {
        std::vector<double> next(dist.size() + 1, 0.0);
        for (std::size_t w = 0; w < dist.size(); ++w) {
            next[w] += dist[w] * (1.0 - q);
            next[w + 1] += dist[w] * q;
        }
        dist = std::move(next);
    }
    double err = 0.0;
    for (std::size_t w = qs.size() / 2 + 1; w < dist.size(); ++w) err += dist[w];
    return err;
}

}  // namespace

ChannelReport simulate_channel(const std::vector<Sentence>& carriers, const SecretMessage& m,
                               double p_flip, std::size_t k_votes, std::size_t trials,
                               std::uint64_t rng_seed, const Lexicon& lex,
                               const BucketPartition& part) {
    if (p_flip < 0.0 || p_flip > 1.0) throw ConfigError("p_flip must be in [0, 1]");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (k_votes % 2 == 0) throw EvenVoteCount(k_votes);
    if (carriers.size() < k_votes) {
        throw ConfigError("need at least k_votes carrier sentences");
    }

    std::vector<Sentence> pool(carriers.begin(),
                               carriers.begin() + static_cast<std::ptrdiff_t>(k_votes));
    std::vector<Sentence> clean = encode_voted(pool, m, lex, part);
    std::vector<CarrierMap> maps;
    maps.reserve(clean.size());
    for (const auto& s : clean) maps.push_back(carrier_positions(s, lex, part));

    ChannelReport report;
    report.p_flip = p_flip;
    report.k_votes = k_votes;
    report.trials = trials;

    // Analytic per-bit error from the bucket composition of each synset.
    const std::size_t n_bits = m.bits.size();
    double analytic_sum = 0.0;
    for (std::size_t b = 0; b < n_bits; ++b) {
        std::vector<double> qs;
        qs.reserve(k_votes);
        for (std::size_t c = 0; c < k_votes; ++c) {
            qs.push_back(slot_flip_probability(clean[c], maps[c].positions[b], m.bits[b], p_flip,
                                               lex, part));
        }
        analytic_sum += heterogeneous_majority_error(qs);
    }
    report.analytic_per_bit_error = n_bits == 0 ? 0.0 : analytic_sum / static_cast<double>(n_bits);

    std::size_t bit_errors = 0;
    std::size_t exact_matches = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(rng_seed ^ static_cast<std::uint64_t>(trial));
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        std::vector<Sentence> noisy = clean;
        for (std::size_t c = 0; c < noisy.size(); ++c) {
            for (const auto& slot : maps[c].positions) {
                if (unit(rng) >= p_flip) continue;
                const auto* members = lex.synset(slot.synset_id);
                std::vector<std::string> alternatives;
                for (const auto& mem : *members) {
                    if (mem != noisy[c].tokens[slot.token_index].norm) {
                        alternatives.push_back(mem);
                    }
                }
                if (alternatives.empty()) continue;
                std::uniform_int_distribution<std::size_t> pick(0, alternatives.size() - 1);
                replace_token(noisy[c], slot.token_index, alternatives[pick(rng)]);
            }
        }

        SecretMessage decoded = decode_voted(noisy, n_bits, lex, part);
        std::size_t wrong = 0;
        for (std::size_t b = 0; b < n_bits; ++b) {
            if (decoded.bits[b] != m.bits[b]) ++wrong;
        }
        bit_errors += wrong;
        if (wrong == 0) ++exact_matches;
    }

    const double denom = static_cast<double>(trials) * static_cast<double>(std::max<std::size_t>(1, n_bits));
    report.per_bit_error = static_cast<double>(bit_errors) / denom;
    report.exact_match_rate = static_cast<double>(exact_matches) / static_cast<double>(trials);
    return report;
}

}  // namespace ptk
