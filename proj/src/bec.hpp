#pragma once

#include <cstdint>
#include <vector>

#include "code.hpp"
#include "ext_image.hpp"
#include "subspace.hpp"

namespace nbldpc {

// Per-node bit masks marking which transmitted positions were received.
class ErasurePattern {
public:
    explicit ErasurePattern(const std::vector<int>& lengths);

    int nodes() const { return static_cast<int>(lengths_.size()); }
    int length(int node) const { return lengths_[node]; }
    bool received(int node, int pos) const {
        return words_[node * 4 + (pos >> 6)] >> (pos & 63) & 1;
    }
    void set_received(int node, int pos) { words_[node * 4 + (pos >> 6)] |= 1ULL << (pos & 63); }

private:
    std::vector<int> lengths_;
    std::vector<uint64_t> words_;  // 4 words per node
};

struct DecodeOutcome {
    std::vector<uint8_t> resolved;       // posterior is a singleton
    std::vector<int> bit_constant_mask;  // bit i constant over the posterior
    std::vector<int> bit_value_mask;     // its value when constant
    int iterations = 0;
};

// Independent erasure of each transmitted bit with probability eps.
ErasurePattern transmit(const std::vector<ExtensionMatrix>& assignment, double eps,
                        uint64_t seed);

// Eligible set from the received sub-matrix; throws if the received bits are
// inconsistent (the BEC never flips bits, so this flags corrupted input).
AffineSubspace channel_set(const ExtensionMatrix& a, const std::vector<int>& received_pos,
                           const std::vector<int>& received_val);

// Flooding-schedule message passing over eligible sets, run to the fixpoint
// (no check-to-variable message changes) or max_iters. codeword == nullptr
// means the all-zero codeword. posterior_cards, when given, receives the
// per-node posterior cardinalities after every iteration.
DecodeOutcome decode(const NBCode& code, const std::vector<ExtensionMatrix>& assignment,
                     const ErasurePattern& pattern, int max_iters = 200,
                     const std::vector<int>* codeword = nullptr,
                     std::vector<std::vector<int>>* posterior_cards = nullptr);

// Same fixpoint computed with explicit symbol lists and exhaustive
// enumeration at the check nodes. Verification oracle for decode().
DecodeOutcome oracle_decode(const NBCode& code, const std::vector<ExtensionMatrix>& assignment,
                            const ErasurePattern& pattern, int max_iters = 200,
                            const std::vector<int>* codeword = nullptr);

// Fraction of source bits (systematic symbol positions) left unresolved.
double bit_erasure_rate(const std::vector<DecodeOutcome>& outcomes,
                        const std::vector<int>& systematic_positions, int p);

}  // namespace nbldpc
