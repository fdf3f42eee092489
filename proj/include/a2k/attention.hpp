// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "a2k/blocking.hpp"
#include "a2k/contraction.hpp"
#include "a2k/ops.hpp"
#include "a2k/tensor.hpp"

namespace a2k {

/// The eight 1x1 projections of the mechanism: query/key/value for each
/// attention axis plus the two post-unblock fusion projections.
struct ProjectionSet {
    ChannelProjection dq, dk, dv;
    ChannelProjection pq, pk, pv;
    ChannelProjection fusion_d, fusion_p;

    static ProjectionSet identity(int64_t channels);
    /// One seeded stream, drawn in the order dq, dk, dv, pq, pk, pv,
    /// fusion_d, fusion_p; each weight is filled row-major.
    static ProjectionSet seeded(int64_t channels, uint64_t seed);
};

struct A2KConfig {
    int64_t patch_edge = 8;  // p, pixels per patch side
    int64_t heads = 8;

    bool enable_da = true;        // distributed (dilated) attention axis
    bool enable_pa = true;        // progressive (two-step) attention axis
    bool enable_pa_step1 = true;  // patch matching + reshuffle before step 2
    bool parametric = false;      // false replaces every projection with identity

    /// Take values from the content map instead of the style map. The prose
    /// formulation writes values from content; the reference algorithm uses
    /// style, which is the default here.
    bool values_from_content = false;

    uint64_t seed = 0;  // projection init when parametric and none are supplied
    std::optional<ProjectionSet> projections;

    /// Per-layer patch edges for multi-scale feature pyramids
    /// (layers 2..5 of the extractor contract).
    std::array<int64_t, 4> layer_patch_edges{16, 8, 8, 4};

    void validate() const;
    /// Copy of this config with patch_edge taken from layer_patch_edges;
    /// `layer` is 2..5.
    A2KConfig for_layer(int layer) const;
};

/// Resolve the projections a config implies for a given channel count:
/// identity when non-parametric, the supplied set (validated) or a seeded
/// set otherwise.
ProjectionSet resolve_projections(const A2KConfig& config, int64_t channels);

enum class ScoreAxis {
    kDistributed,  // rows are (b, h, offset, query patch) over key patches
    kProgressive,  // rows are (b, h, patch, query offset) over key offsets
};

/// Softmax-normalized attention scores together with the axis they were
/// computed along; shape is (B, h, r, n_q, n_k) for the distributed axis and
/// (B, h, n, r, r) for the progressive axis.
struct AttentionScores {
    Tensor values;
    ScoreAxis axis;
};

struct AttentionResult {
    BlockedTensor output;
    AttentionScores scores;
};

/// Exact multiplication counts per site of one forward pass.
struct MacBreakdown {
    uint64_t da_logits = 0;
    uint64_t da_values = 0;
    uint64_t pa1_logits = 0;
    uint64_t pa2_logits = 0;
    uint64_t pa2_values = 0;
    uint64_t projections = 0;

    /// Multiplications spent computing similarity logits; this is the
    /// quantity the closed-form flop model counts.
    uint64_t logit_macs() const { return da_logits + pa1_logits + pa2_logits; }
    uint64_t value_macs() const { return da_values + pa2_values; }
    uint64_t total() const { return logit_macs() + value_macs() + projections; }
};

/// Dilated attention: queries at a within-patch offset attend over every key
/// patch at the same offset. q and k/v may have different patch counts.
AttentionResult distributed_attention(const BlockedTensor& q, const BlockedTensor& k,
                                      const BlockedTensor& v, MacBreakdown* macs = nullptr);

/// Whole-patch similarity argmax: for each query patch, the index of the key
/// patch with the largest full-patch dot product. Shape (B, h, n_q).
IntTensor progressive_step1(const BlockedTensor& q, const BlockedTensor& k,
                            MacBreakdown* macs = nullptr);

/// Gather patches: output patch x is input patch indices[x], per batch and
/// head. Indices may repeat.
BlockedTensor reshuffle(const BlockedTensor& t, const IntTensor& indices);

/// Within-patch attention between aligned patch pairs: each query offset
/// attends over the r key offsets of its matched patch.
AttentionResult progressive_step2(const BlockedTensor& q, const BlockedTensor& k_shuffled,
                                  const BlockedTensor& v_shuffled, MacBreakdown* macs = nullptr);

/// Full mechanism: instance-normalize the q/k paths, project, block, run the
/// enabled attention axes, unblock, fuse, and add the content residual.
Tensor a2k_forward(const Tensor& content, const Tensor& style, const A2KConfig& config,
                   MacBreakdown* macs = nullptr);

/// The MacBreakdown a2k_forward would report, computed from shapes alone.
MacBreakdown a2k_forward_macs(const Shape& content, const Shape& style, const A2KConfig& config);

/// Closed-form complexity model. `block_param` is the b of the model's own
/// notation: the blocked tensors hold b*b patches of (H/b)(W/b) pixels, so
/// b corresponds to grid edge H/p of the implementation on square inputs.
struct FlopCount {
    uint64_t distributed = 0;        // b^2 * HWC
    uint64_t progressive_step1 = 0;  // b^2 * HWC
    uint64_t progressive_step2 = 0;  // (H/b)(W/b) * HWC
    uint64_t all_to_all = 0;         // (HW)^2 * C, the dense comparison count

    uint64_t total() const { return distributed + progressive_step1 + progressive_step2; }
};

FlopCount a2k_flops(int64_t height, int64_t width, int64_t channels, int64_t block_param);

}  // namespace a2k
