// SPDX-License-Identifier: Apache-2.0

#include "a2k/tensor.hpp"

#include <cmath>
#include <sstream>

namespace a2k {

std::string shape_to_string(const Shape& shape) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < shape.size(); ++i) {
        if (i != 0) out << ",";
        out << shape[i];
    }
    out << ")";
    return out.str();
}

int64_t shape_numel(const Shape& shape) {
    int64_t n = 1;
    for (int64_t d : shape) {
        if (d < 0) throw ShapeError("negative dimension in shape " + shape_to_string(shape));
        n *= d;
    }
    return n;
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<size_t>(shape_numel(shape_)), 0.0f);
}

Tensor::Tensor(Shape shape, std::vector<float> values) : shape_(std::move(shape)), data_(std::move(values)) {
    if (shape_numel(shape_) != static_cast<int64_t>(data_.size())) {
        throw ShapeError("value count " + std::to_string(data_.size()) +
                         " does not match shape " + shape_to_string(shape_));
    }
}

Tensor Tensor::full(Shape shape, float value) {
    Tensor t(std::move(shape));
    for (float& v : t.data_) v = value;
    return t;
}

Tensor Tensor::uniform(Shape shape, uint64_t seed, float lo, float hi) {
    Tensor t(std::move(shape));
    SeededRng rng(seed);
    for (float& v : t.data_) v = rng.uniform(lo, hi);
    return t;
}

Tensor Tensor::reshaped(Shape shape) const {
    if (shape_numel(shape) != numel()) {
        throw ShapeError("reshape " + shape_to_string(shape_) + " -> " + shape_to_string(shape) +
                         " changes element count");
    }
    return Tensor(std::move(shape), data_);
}

bool Tensor::all_finite() const {
    for (float v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

size_t Tensor::offset(std::span<const int64_t> index) const {
    if (index.size() != shape_.size()) {
        throw ShapeError("index rank " + std::to_string(index.size()) + " vs tensor rank " +
                         std::to_string(shape_.size()));
    }
    int64_t off = 0;
    for (size_t i = 0; i < shape_.size(); ++i) {
        off = off * shape_[i] + index[i];
    }
    return static_cast<size_t>(off);
}

IntTensor::IntTensor(Shape shape) : shape_(std::move(shape)) {
    data_.assign(static_cast<size_t>(shape_numel(shape_)), 0);
}

IntTensor::IntTensor(Shape shape, std::vector<int64_t> values)
    : shape_(std::move(shape)), data_(std::move(values)) {
    if (shape_numel(shape_) != static_cast<int64_t>(data_.size())) {
        throw ShapeError("value count " + std::to_string(data_.size()) +
                         " does not match shape " + shape_to_string(shape_));
    }
}

}  // namespace a2k
