#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "entailguard/errors.hpp"

namespace entailguard {

// Minimal reader/writer for the safetensors container: an 8-byte
// little-endian header length, a JSON header mapping tensor names to
// {dtype, shape, data_offsets}, then the raw buffer. F32 only.
struct SafeTensor {
    std::vector<std::int64_t> shape;
    std::vector<float> data;
};

using TensorMap = std::map<std::string, SafeTensor>;

TensorMap load_safetensors(const std::filesystem::path& file);

// Deterministic: header keys sorted, tensors laid out in key order.
void save_safetensors(const std::filesystem::path& file, const TensorMap& tensors);

}  // namespace entailguard
