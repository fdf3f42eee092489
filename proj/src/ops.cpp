// SPDX-License-Identifier: Apache-2.0

#include "a2k/ops.hpp"

#include <cmath>
#include <vector>

namespace a2k {

Tensor softmax_last_axis(const Tensor& x) {
    if (x.rank() < 1) throw ShapeError("softmax_last_axis requires rank >= 1");
    const int64_t width = x.dim(x.rank() - 1);
    Tensor out(x.shape());
    if (x.numel() == 0) return out;
    const int64_t rows = x.numel() / width;
    for (int64_t row = 0; row < rows; ++row) {
        const float* in = x.data() + row * width;
        float* o = out.data() + row * width;
        float m = in[0];
        for (int64_t i = 1; i < width; ++i) m = std::max(m, in[i]);
        double denom = 0.0;
        for (int64_t i = 0; i < width; ++i) denom += std::exp(static_cast<double>(in[i]) - m);
        for (int64_t i = 0; i < width; ++i) {
            o[i] = static_cast<float>(std::exp(static_cast<double>(in[i]) - m) / denom);
        }
    }
    return out;
}

IntTensor argmax_last_axis(const Tensor& x) {
    if (x.rank() < 1) throw ShapeError("argmax_last_axis requires rank >= 1");
    const int64_t width = x.dim(x.rank() - 1);
    if (width < 1) throw ShapeError("argmax_last_axis requires a non-empty last axis");
    Shape out_shape(x.shape().begin(), x.shape().end() - 1);
    IntTensor out(out_shape);
    const int64_t rows = x.numel() / width;
    for (int64_t row = 0; row < rows; ++row) {
        const float* in = x.data() + row * width;
        int64_t best = 0;
        for (int64_t i = 1; i < width; ++i) {
            if (in[i] > in[best]) best = i;
        }
        out.data()[row] = best;
    }
    return out;
}

Tensor instance_norm(const Tensor& feature_map, float epsilon) {
    if (feature_map.rank() != 4) {
        throw ShapeError("instance_norm expects a (B, C, H, W) map, got " +
                         shape_to_string(feature_map.shape()));
    }
    if (!(epsilon > 0.0f)) throw ValidationError("instance_norm epsilon must be positive");
    const int64_t planes = feature_map.dim(0) * feature_map.dim(1);
    const int64_t spatial = feature_map.dim(2) * feature_map.dim(3);
    Tensor out(feature_map.shape());
    for (int64_t p = 0; p < planes; ++p) {
        const float* in = feature_map.data() + p * spatial;
        float* o = out.data() + p * spatial;
        double mean = 0.0;
        for (int64_t i = 0; i < spatial; ++i) mean += in[i];
        mean /= static_cast<double>(spatial);
        double var = 0.0;
        for (int64_t i = 0; i < spatial; ++i) {
            const double d = in[i] - mean;
            var += d * d;
        }
        var /= static_cast<double>(spatial);
        const double inv = 1.0 / std::sqrt(var + epsilon);
        for (int64_t i = 0; i < spatial; ++i) {
            o[i] = static_cast<float>((in[i] - mean) * inv);
        }
    }
    return out;
}

ChannelProjection ChannelProjection::identity(int64_t channels) {
    Tensor weight({channels, channels});
    for (int64_t c = 0; c < channels; ++c) weight.data()[c * channels + c] = 1.0f;
    return ChannelProjection{std::move(weight), std::nullopt};
}

ChannelProjection ChannelProjection::seeded(int64_t out_channels, int64_t in_channels,
                                            SeededRng& rng) {
    const float k = 1.0f / std::sqrt(static_cast<float>(in_channels));
    Tensor weight({out_channels, in_channels});
    for (int64_t i = 0; i < weight.numel(); ++i) weight.data()[i] = rng.uniform(-k, k);
    return ChannelProjection{std::move(weight), std::nullopt};
}

Tensor project_channels(const Tensor& feature_map, const ChannelProjection& projection) {
    if (feature_map.rank() != 4) {
        throw ShapeError("project_channels expects a (B, C, H, W) map, got " +
                         shape_to_string(feature_map.shape()));
    }
    if (projection.weight.rank() != 2) {
        throw ShapeError("projection weight must be a (C_out, C_in) matrix");
    }
    const int64_t B = feature_map.dim(0);
    const int64_t C_in = feature_map.dim(1);
    const int64_t HW = feature_map.dim(2) * feature_map.dim(3);
    const int64_t C_out = projection.out_channels();
    if (projection.in_channels() != C_in) {
        throw ShapeError("projection expects " + std::to_string(projection.in_channels()) +
                         " input channels, feature map has " + std::to_string(C_in));
    }
    if (projection.bias && (projection.bias->rank() != 1 || projection.bias->dim(0) != C_out)) {
        throw ShapeError("projection bias must have shape (C_out)");
    }
    Tensor out({B, C_out, feature_map.dim(2), feature_map.dim(3)});
    const float* w = projection.weight.data();
    for (int64_t b = 0; b < B; ++b) {
        const float* in = feature_map.data() + b * C_in * HW;
        float* o = out.data() + b * C_out * HW;
        for (int64_t co = 0; co < C_out; ++co) {
            const float* wrow = w + co * C_in;
            const double bias = projection.bias ? projection.bias->data()[co] : 0.0;
            float* orow = o + co * HW;
            for (int64_t i = 0; i < HW; ++i) {
                double acc = bias;
                for (int64_t ci = 0; ci < C_in; ++ci) {
                    acc += static_cast<double>(wrow[ci]) * in[ci * HW + i];
                }
                orow[i] = static_cast<float>(acc);
            }
        }
    }
    return out;
}

uint64_t projection_macs(const Shape& feature_map, const ChannelProjection& projection) {
    if (feature_map.size() != 4) return 0;
    return static_cast<uint64_t>(feature_map[0]) * static_cast<uint64_t>(projection.out_channels()) *
           static_cast<uint64_t>(projection.in_channels()) * static_cast<uint64_t>(feature_map[2]) *
           static_cast<uint64_t>(feature_map[3]);
}

}  // namespace a2k
