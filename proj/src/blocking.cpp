// SPDX-License-Identifier: Apache-2.0

#include "a2k/blocking.hpp"

#include <string>

namespace a2k {

BlockedTensor block(const Tensor& feature_map, int64_t patch_edge, int64_t heads) {
    if (feature_map.rank() != 4) {
        throw ShapeError("block expects a (B, C, H, W) map, got " +
                         shape_to_string(feature_map.shape()));
    }
    if (patch_edge <= 0) throw ValidationError("patch edge must be positive");
    if (heads <= 0) throw ValidationError("head count must be positive");
    const int64_t B = feature_map.dim(0);
    const int64_t C = feature_map.dim(1);
    const int64_t H = feature_map.dim(2);
    const int64_t W = feature_map.dim(3);
    if (H % patch_edge != 0) {
        throw ValidationError("height " + std::to_string(H) + " is not divisible by patch edge " +
                              std::to_string(patch_edge));
    }
    if (W % patch_edge != 0) {
        throw ValidationError("width " + std::to_string(W) + " is not divisible by patch edge " +
                              std::to_string(patch_edge));
    }
    if (C % heads != 0) {
        throw ValidationError("channel count " + std::to_string(C) + " is not divisible by head count " +
                              std::to_string(heads));
    }
    const int64_t grid_h = H / patch_edge;
    const int64_t grid_w = W / patch_edge;
    const int64_t n = grid_h * grid_w;
    const int64_t r = patch_edge * patch_edge;
    const int64_t cph = C / heads;

    BlockedTensor out;
    out.data = Tensor({B, heads, cph, n, r});
    out.patch_edge = patch_edge;
    out.grid_h = grid_h;
    out.grid_w = grid_w;

    const float* src = feature_map.data();
    float* dst = out.data.data();
    for (int64_t b = 0; b < B; ++b) {
        for (int64_t c = 0; c < C; ++c) {
            const float* plane = src + (b * C + c) * H * W;
            // (b, head, c % cph) target plane for this source channel
            float* target = dst + (((b * heads + c / cph) * cph + c % cph) * n) * r;
            for (int64_t gi = 0; gi < grid_h; ++gi) {
                for (int64_t gj = 0; gj < grid_w; ++gj) {
                    float* patch = target + (gi * grid_w + gj) * r;
                    const float* corner = plane + (gi * patch_edge) * W + gj * patch_edge;
                    for (int64_t pi = 0; pi < patch_edge; ++pi) {
                        for (int64_t pj = 0; pj < patch_edge; ++pj) {
                            patch[pi * patch_edge + pj] = corner[pi * W + pj];
                        }
                    }
                }
            }
        }
    }
    return out;
}

Tensor unblock(const BlockedTensor& blocked, int64_t height, int64_t width) {
    const Tensor& data = blocked.data;
    if (data.rank() != 5) {
        throw ShapeError("blocked tensor must have rank 5, got " + shape_to_string(data.shape()));
    }
    const int64_t p = blocked.patch_edge;
    if (p <= 0 || blocked.grid_h <= 0 || blocked.grid_w <= 0) {
        throw ValidationError("blocked tensor metadata is not initialized");
    }
    if (height != blocked.grid_h * p || width != blocked.grid_w * p) {
        throw ValidationError("requested " + std::to_string(height) + "x" + std::to_string(width) +
                              " map does not match blocked layout " + std::to_string(blocked.grid_h * p) +
                              "x" + std::to_string(blocked.grid_w * p));
    }
    if (data.dim(3) != blocked.grid_h * blocked.grid_w || data.dim(4) != p * p) {
        throw ValidationError("blocked tensor shape " + shape_to_string(data.shape()) +
                              " is inconsistent with patch edge " + std::to_string(p));
    }
    const int64_t B = data.dim(0);
    const int64_t heads = data.dim(1);
    const int64_t cph = data.dim(2);
    const int64_t C = heads * cph;
    const int64_t n = data.dim(3);
    const int64_t r = data.dim(4);
    const int64_t grid_w = blocked.grid_w;

    Tensor out({B, C, height, width});
    const float* src = data.data();
    float* dst = out.data();
    for (int64_t b = 0; b < B; ++b) {
        for (int64_t c = 0; c < C; ++c) {
            float* plane = dst + (b * C + c) * height * width;
            const float* source = src + (((b * heads + c / cph) * cph + c % cph) * n) * r;
            for (int64_t gi = 0; gi < blocked.grid_h; ++gi) {
                for (int64_t gj = 0; gj < grid_w; ++gj) {
                    const float* patch = source + (gi * grid_w + gj) * r;
                    float* corner = plane + (gi * p) * width + gj * p;
                    for (int64_t pi = 0; pi < p; ++pi) {
                        for (int64_t pj = 0; pj < p; ++pj) {
                            corner[pi * width + pj] = patch[pi * p + pj];
                        }
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace a2k
