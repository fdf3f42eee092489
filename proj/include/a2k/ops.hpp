// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "a2k/tensor.hpp"

namespace a2k {

/// Softmax over the last axis with max-subtraction. No temperature scaling is
/// applied to the logits. Rows sum to 1 within 1e-6 for finite input.
Tensor softmax_last_axis(const Tensor& x);

/// Index of the largest element along the last axis; ties break to the
/// lowest index. Output shape is the input shape without its last axis.
IntTensor argmax_last_axis(const Tensor& x);

/// Per-(batch, channel) spatial normalization of a rank-4 map:
/// (x - mean) / sqrt(var + epsilon), population variance, float64 statistics.
/// A spatially constant channel maps to zeros.
Tensor instance_norm(const Tensor& feature_map, float epsilon = 1e-5f);

/// A 1x1 convolution: a (C_out, C_in) weight applied per spatial position,
/// with an optional bias.
struct ChannelProjection {
    Tensor weight;               // (C_out, C_in)
    std::optional<Tensor> bias;  // (C_out); absent means zero

    static ChannelProjection identity(int64_t channels);
    /// Deterministic init: weights drawn uniformly from [-k, k] with
    /// k = 1/sqrt(C_in), row-major draw order, no bias.
    static ChannelProjection seeded(int64_t out_channels, int64_t in_channels, SeededRng& rng);

    int64_t out_channels() const { return weight.dim(0); }
    int64_t in_channels() const { return weight.dim(1); }
};

/// Apply a ChannelProjection to a rank-4 (B, C, H, W) map.
Tensor project_channels(const Tensor& feature_map, const ChannelProjection& projection);

/// Number of scalar multiplications project_channels performs.
uint64_t projection_macs(const Shape& feature_map, const ChannelProjection& projection);

}  // namespace a2k
