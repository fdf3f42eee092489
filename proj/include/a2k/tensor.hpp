// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2k {

/// Mismatched tensor dimensions (wrong rank, incompatible axis extents).
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration or precondition (divisibility, mode flags, ranges).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File or format error (missing file, bad magic, truncated payload).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Shape = std::vector<int64_t>;

std::string shape_to_string(const Shape& shape);
int64_t shape_numel(const Shape& shape);

/// Dense row-major float32 array. Values are immutable by convention once an
/// operation has produced them; all exported operations return fresh tensors.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape);
    Tensor(Shape shape, std::vector<float> values);

    static Tensor full(Shape shape, float value);
    /// Deterministic uniform fill in [lo, hi); identical across platforms for
    /// a fixed seed (mt19937_64 with 53-bit mantissa draws).
    static Tensor uniform(Shape shape, uint64_t seed, float lo = -1.0f, float hi = 1.0f);

    int64_t rank() const { return static_cast<int64_t>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    int64_t dim(int64_t axis) const { return shape_[static_cast<size_t>(axis)]; }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }

    const float* data() const { return data_.data(); }
    float* data() { return data_.data(); }
    std::span<const float> values() const { return data_; }
    std::span<float> values() { return data_; }

    float at(std::span<const int64_t> index) const { return data_[offset(index)]; }
    float at(std::initializer_list<int64_t> index) const {
        return at(std::span<const int64_t>(index.begin(), index.size()));
    }
    float& at(std::span<const int64_t> index) { return data_[offset(index)]; }
    float& at(std::initializer_list<int64_t> index) {
        return at(std::span<const int64_t>(index.begin(), index.size()));
    }

    /// Same buffer under a new shape; element count must be preserved.
    Tensor reshaped(Shape shape) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    /// True when every element is finite.
    bool all_finite() const;

private:
    size_t offset(std::span<const int64_t> index) const;

    Shape shape_;
    std::vector<float> data_;
};

/// Dense row-major int64 array (argmax indices, gather maps).
class IntTensor {
public:
    IntTensor() = default;
    explicit IntTensor(Shape shape);
    IntTensor(Shape shape, std::vector<int64_t> values);

    int64_t rank() const { return static_cast<int64_t>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    int64_t dim(int64_t axis) const { return shape_[static_cast<size_t>(axis)]; }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }

    const int64_t* data() const { return data_.data(); }
    int64_t* data() { return data_.data(); }
    std::span<const int64_t> values() const { return data_; }

private:
    Shape shape_;
    std::vector<int64_t> data_;
};

/// Uniform variates with a platform-pinned sequence (mt19937_64 is fully
/// specified by the standard; the [0,1) mapping uses the top 53 bits).
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    float uniform(float lo, float hi) {
        return static_cast<float>(lo + (static_cast<double>(hi) - lo) * unit());
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace a2k
