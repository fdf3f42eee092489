// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "a2k/tensor.hpp"

namespace a2k {

/// The five fixed contractions the attention mechanism needs, written in
/// einsum-style notation over blocked tensors (b batch, h head, c channel,
/// x query patch, z key patch, y/z within-patch offsets). A general einsum
/// engine is deliberately not provided.
enum class ContractionPattern {
    kOffsetLogits,  // "bhcxy,bhczy->bhyxz": per-offset patch-to-patch scores
    kPatchLogits,   // "bhcxy,bhczy->bhxz":  whole-patch similarity (sums c and y)
    kInnerLogits,   // "bhcxy,bhcxz->bhxyz": offset-to-offset scores inside a patch pair
    kOffsetValues,  // "bhyxz,bhvzy->bhcxy": apply per-offset scores to values (v == c)
    kInnerValues,   // "bhxyz,bhcxz->bhcxy": apply within-patch scores to values
};

/// Einsum-style notation string for a pattern.
std::string_view pattern_notation(ContractionPattern pattern);

/// Output shape for the pattern; throws ShapeError naming the offending axis
/// when the inputs are inconsistent.
Shape contraction_result_shape(const Shape& a, const Shape& b, ContractionPattern pattern);

/// Exact number of scalar multiplications the contraction performs
/// (output element count times contracted extent).
uint64_t contraction_macs(const Shape& a, const Shape& b, ContractionPattern pattern);

/// Contract two tensors. Accumulation is in float64 over ascending contracted
/// index; results are stored as float32. When `mac_count` is non-null it is
/// incremented by the number of scalar multiplications performed.
Tensor contract(const Tensor& a, const Tensor& b, ContractionPattern pattern,
                uint64_t* mac_count = nullptr);

}  // namespace a2k
