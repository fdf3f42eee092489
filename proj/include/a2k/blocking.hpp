// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "a2k/tensor.hpp"

namespace a2k {

/// A feature map rearranged into non-overlapping square patches:
/// data has shape (B, heads, C/heads, n, r) with n = (H/p)(W/p) patches of
/// r = p*p pixels each. Patch grid and patch interior are both row-major.
/// The rearrangement is a pure permutation: unblock(block(x)) == x bitwise.
struct BlockedTensor {
    Tensor data;
    int64_t patch_edge = 0;  // p
    int64_t grid_h = 0;      // H / p
    int64_t grid_w = 0;      // W / p

    int64_t batch() const { return data.dim(0); }
    int64_t heads() const { return data.dim(1); }
    int64_t channels_per_head() const { return data.dim(2); }
    int64_t patch_count() const { return data.dim(3); }
    int64_t patch_size() const { return data.dim(4); }
    int64_t height() const { return grid_h * patch_edge; }
    int64_t width() const { return grid_w * patch_edge; }
};

/// Partition a (B, C, H, W) map into patches with stride equal to the patch
/// edge (non-overlapping) and split channels contiguously into `heads`
/// groups. H, W must be divisible by `patch_edge` and C by `heads`; there is
/// no implicit padding.
BlockedTensor block(const Tensor& feature_map, int64_t patch_edge, int64_t heads);

/// Exact inverse of block. `height`/`width` must match the blocked layout.
Tensor unblock(const BlockedTensor& blocked, int64_t height, int64_t width);

}  // namespace a2k
