// SPDX-License-Identifier: Apache-2.0

#include "a2k/contraction.hpp"

#include <string>
#include <vector>

namespace a2k {

namespace {

void expect_rank(const Shape& s, int64_t rank, const char* operand, ContractionPattern p) {
    if (static_cast<int64_t>(s.size()) != rank) {
        throw ShapeError(std::string("operand ") + operand + " of pattern \"" +
                         std::string(pattern_notation(p)) + "\" must have rank " +
                         std::to_string(rank) + ", got " + shape_to_string(s));
    }
}

void expect_axis(char label, int64_t a, int64_t b, ContractionPattern p) {
    if (a != b) {
        throw ShapeError(std::string("axis '") + label + "' mismatch: " + std::to_string(a) +
                         " vs " + std::to_string(b) + " in pattern \"" +
                         std::string(pattern_notation(p)) + "\"");
    }
}

}  // namespace

std::string_view pattern_notation(ContractionPattern pattern) {
    switch (pattern) {
        case ContractionPattern::kOffsetLogits: return "bhcxy,bhczy->bhyxz";
        case ContractionPattern::kPatchLogits: return "bhcxy,bhczy->bhxz";
        case ContractionPattern::kInnerLogits: return "bhcxy,bhcxz->bhxyz";
        case ContractionPattern::kOffsetValues: return "bhyxz,bhvzy->bhcxy";
        case ContractionPattern::kInnerValues: return "bhxyz,bhcxz->bhcxy";
    }
    return "";
}

Shape contraction_result_shape(const Shape& a, const Shape& b, ContractionPattern pattern) {
    expect_rank(a, 5, "a", pattern);
    expect_rank(b, pattern == ContractionPattern::kPatchLogits ? 5 : 5, "b", pattern);
    expect_axis('b', a[0], b[0], pattern);
    expect_axis('h', a[1], b[1], pattern);
    switch (pattern) {
        case ContractionPattern::kOffsetLogits:
            // a=(b,h,c,x,y) b=(b,h,c,z,y) -> (b,h,y,x,z)
            expect_axis('c', a[2], b[2], pattern);
            expect_axis('y', a[4], b[4], pattern);
            return {a[0], a[1], a[4], a[3], b[3]};
        case ContractionPattern::kPatchLogits:
            // a=(b,h,c,x,y) b=(b,h,c,z,y) -> (b,h,x,z)
            expect_axis('c', a[2], b[2], pattern);
            expect_axis('y', a[4], b[4], pattern);
            return {a[0], a[1], a[3], b[3]};
        case ContractionPattern::kInnerLogits:
            // a=(b,h,c,x,y) b=(b,h,c,x,z) -> (b,h,x,y,z)
            expect_axis('c', a[2], b[2], pattern);
            expect_axis('x', a[3], b[3], pattern);
            return {a[0], a[1], a[3], a[4], b[4]};
        case ContractionPattern::kOffsetValues:
            // a=(b,h,y,x,z) b=(b,h,c,z,y) -> (b,h,c,x,y); 'v' of the notation is 'c'
            expect_axis('z', a[4], b[3], pattern);
            expect_axis('y', a[2], b[4], pattern);
            return {a[0], a[1], b[2], a[3], a[2]};
        case ContractionPattern::kInnerValues:
            // a=(b,h,x,y,z) b=(b,h,c,x,z) -> (b,h,c,x,y)
            expect_axis('x', a[2], b[3], pattern);
            expect_axis('z', a[4], b[4], pattern);
            return {a[0], a[1], b[2], a[2], a[3]};
    }
    throw ValidationError("unknown contraction pattern");
}

uint64_t contraction_macs(const Shape& a, const Shape& b, ContractionPattern pattern) {
    Shape out = contraction_result_shape(a, b, pattern);
    uint64_t macs = static_cast<uint64_t>(shape_numel(out));
    switch (pattern) {
        case ContractionPattern::kOffsetLogits:
        case ContractionPattern::kInnerLogits:
            macs *= static_cast<uint64_t>(a[2]);  // c
            break;
        case ContractionPattern::kPatchLogits:
            macs *= static_cast<uint64_t>(a[2]) * static_cast<uint64_t>(a[4]);  // c * y
            break;
        case ContractionPattern::kOffsetValues:
        case ContractionPattern::kInnerValues:
            macs *= static_cast<uint64_t>(a[4]);  // z
            break;
    }
    return macs;
}

namespace {

// a=(C,X,Y), b=(C,Z,Y) -> out=(Y,X,Z), summing c.
void offset_logits_slice(const float* a, const float* b, float* out, int64_t C, int64_t X,
                         int64_t Y, int64_t Z) {
    std::vector<float> qy(static_cast<size_t>(X * C));
    std::vector<float> ky(static_cast<size_t>(Z * C));
    for (int64_t y = 0; y < Y; ++y) {
        for (int64_t x = 0; x < X; ++x)
            for (int64_t c = 0; c < C; ++c) qy[static_cast<size_t>(x * C + c)] = a[(c * X + x) * Y + y];
        for (int64_t z = 0; z < Z; ++z)
            for (int64_t c = 0; c < C; ++c) ky[static_cast<size_t>(z * C + c)] = b[(c * Z + z) * Y + y];
        float* orow = out + y * X * Z;
        for (int64_t x = 0; x < X; ++x) {
            const float* q = qy.data() + x * C;
            for (int64_t z = 0; z < Z; ++z) {
                const float* k = ky.data() + z * C;
                double acc = 0.0;
                for (int64_t c = 0; c < C; ++c) acc += static_cast<double>(q[c]) * k[c];
                orow[x * Z + z] = static_cast<float>(acc);
            }
        }
    }
}

// a=(C,X,Y), b=(C,Z,Y) -> out=(X,Z), summing c then y.
void patch_logits_slice(const float* a, const float* b, float* out, int64_t C, int64_t X,
                        int64_t Y, int64_t Z) {
    const int64_t K = C * Y;
    std::vector<float> qrows(static_cast<size_t>(X * K));
    std::vector<float> krows(static_cast<size_t>(Z * K));
    for (int64_t x = 0; x < X; ++x)
        for (int64_t c = 0; c < C; ++c)
            for (int64_t y = 0; y < Y; ++y)
                qrows[static_cast<size_t>(x * K + c * Y + y)] = a[(c * X + x) * Y + y];
    for (int64_t z = 0; z < Z; ++z)
        for (int64_t c = 0; c < C; ++c)
            for (int64_t y = 0; y < Y; ++y)
                krows[static_cast<size_t>(z * K + c * Y + y)] = b[(c * Z + z) * Y + y];
    for (int64_t x = 0; x < X; ++x) {
        const float* q = qrows.data() + x * K;
        for (int64_t z = 0; z < Z; ++z) {
            const float* k = krows.data() + z * K;
            double acc = 0.0;
            for (int64_t i = 0; i < K; ++i) acc += static_cast<double>(q[i]) * k[i];
            out[x * Z + z] = static_cast<float>(acc);
        }
    }
}

// a=(C,X,Y), b=(C,X,Z) -> out=(X,Y,Z), summing c.
void inner_logits_slice(const float* a, const float* b, float* out, int64_t C, int64_t X,
                        int64_t Y, int64_t Z) {
    std::vector<float> qx(static_cast<size_t>(Y * C));
    std::vector<float> kx(static_cast<size_t>(Z * C));
    for (int64_t x = 0; x < X; ++x) {
        for (int64_t y = 0; y < Y; ++y)
            for (int64_t c = 0; c < C; ++c) qx[static_cast<size_t>(y * C + c)] = a[(c * X + x) * Y + y];
        for (int64_t z = 0; z < Z; ++z)
            for (int64_t c = 0; c < C; ++c) kx[static_cast<size_t>(z * C + c)] = b[(c * X + x) * Z + z];
        float* orow = out + x * Y * Z;
        for (int64_t y = 0; y < Y; ++y) {
            const float* q = qx.data() + y * C;
            for (int64_t z = 0; z < Z; ++z) {
                const float* k = kx.data() + z * C;
                double acc = 0.0;
                for (int64_t c = 0; c < C; ++c) acc += static_cast<double>(q[c]) * k[c];
                orow[y * Z + z] = static_cast<float>(acc);
            }
        }
    }
}

// a=(Y,X,Z) scores, b=(C,Z,Y) values -> out=(C,X,Y), summing z.
void offset_values_slice(const float* a, const float* b, float* out, int64_t C, int64_t X,
                         int64_t Y, int64_t Z) {
    std::vector<float> vy(static_cast<size_t>(Z * C));
    std::vector<double> acc(static_cast<size_t>(C));
    for (int64_t y = 0; y < Y; ++y) {
        for (int64_t z = 0; z < Z; ++z)
            for (int64_t c = 0; c < C; ++c) vy[static_cast<size_t>(z * C + c)] = b[(c * Z + z) * Y + y];
        for (int64_t x = 0; x < X; ++x) {
            const float* w = a + (y * X + x) * Z;
            acc.assign(static_cast<size_t>(C), 0.0);
            for (int64_t z = 0; z < Z; ++z) {
                const double wz = w[z];
                const float* v = vy.data() + z * C;
                for (int64_t c = 0; c < C; ++c) acc[static_cast<size_t>(c)] += wz * v[c];
            }
            for (int64_t c = 0; c < C; ++c) out[(c * X + x) * Y + y] = static_cast<float>(acc[static_cast<size_t>(c)]);
        }
    }
}

// a=(X,Y,Z) scores, b=(C,X,Z) values -> out=(C,X,Y), summing z.
void inner_values_slice(const float* a, const float* b, float* out, int64_t C, int64_t X,
                        int64_t Y, int64_t Z) {
    std::vector<float> vx(static_cast<size_t>(Z * C));
    std::vector<double> acc(static_cast<size_t>(C));
    for (int64_t x = 0; x < X; ++x) {
        for (int64_t z = 0; z < Z; ++z)
            for (int64_t c = 0; c < C; ++c) vx[static_cast<size_t>(z * C + c)] = b[(c * X + x) * Z + z];
        for (int64_t y = 0; y < Y; ++y) {
            const float* w = a + (x * Y + y) * Z;
            acc.assign(static_cast<size_t>(C), 0.0);
            for (int64_t z = 0; z < Z; ++z) {
                const double wz = w[z];
                const float* v = vx.data() + z * C;
                for (int64_t c = 0; c < C; ++c) acc[static_cast<size_t>(c)] += wz * v[c];
            }
            for (int64_t c = 0; c < C; ++c) out[(c * X + x) * Y + y] = static_cast<float>(acc[static_cast<size_t>(c)]);
        }
    }
}

}  // namespace

Tensor contract(const Tensor& a, const Tensor& b, ContractionPattern pattern, uint64_t* mac_count) {
    Shape out_shape = contraction_result_shape(a.shape(), b.shape(), pattern);
    if (mac_count != nullptr) *mac_count += contraction_macs(a.shape(), b.shape(), pattern);
    Tensor out(out_shape);
    const int64_t B = a.dim(0);
    const int64_t H = a.dim(1);
    if (a.numel() == 0 || b.numel() == 0) return out;

    const int64_t a_slice = a.numel() / (B * H);
    const int64_t b_slice = b.numel() / (B * H);
    const int64_t o_slice = out.numel() / (B * H);
    for (int64_t bh = 0; bh < B * H; ++bh) {
        const float* pa = a.data() + bh * a_slice;
        const float* pb = b.data() + bh * b_slice;
        float* po = out.data() + bh * o_slice;
        switch (pattern) {
            case ContractionPattern::kOffsetLogits:
                offset_logits_slice(pa, pb, po, a.dim(2), a.dim(3), a.dim(4), b.dim(3));
                break;
            case ContractionPattern::kPatchLogits:
                patch_logits_slice(pa, pb, po, a.dim(2), a.dim(3), a.dim(4), b.dim(3));
                break;
            case ContractionPattern::kInnerLogits:
                inner_logits_slice(pa, pb, po, a.dim(2), a.dim(3), a.dim(4), b.dim(4));
                break;
            case ContractionPattern::kOffsetValues:
                offset_values_slice(pa, pb, po, b.dim(2), a.dim(3), a.dim(2), a.dim(4));
                break;
            case ContractionPattern::kInnerValues:
                inner_values_slice(pa, pb, po, b.dim(2), a.dim(2), a.dim(3), a.dim(4));
                break;
        }
    }
    return out;
}

}  // namespace a2k
