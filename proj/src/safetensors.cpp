#include "entailguard/safetensors.hpp"

#include <cstring>
#include <fstream>

#include "nlohmann/json.hpp"

namespace entailguard {

namespace {

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("safetensors: cannot open " + file.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

std::uint64_t read_le64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

void write_le64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

}  // namespace

TensorMap load_safetensors(const std::filesystem::path& file) {
    const std::string bytes = read_file(file);
    if (bytes.size() < 8) throw ParseError("safetensors: " + file.string() + " truncated");
    const std::uint64_t header_len =
        read_le64(reinterpret_cast<const unsigned char*>(bytes.data()));
    if (8 + header_len > bytes.size())
        throw ParseError("safetensors: " + file.string() + " header overruns file");

    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(8, header_len));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("safetensors: " + file.string() + " corrupt header: " + e.what());
    }
    if (!header.is_object()) throw ParseError("safetensors: header must be a JSON object");

    const char* buffer = bytes.data() + 8 + header_len;
    const std::uint64_t buffer_len = bytes.size() - 8 - header_len;

    TensorMap tensors;
    for (auto it = header.begin(); it != header.end(); ++it) {
        if (it.key() == "__metadata__") continue;
        const auto& meta = it.value();
        if (meta.value("dtype", "") != "F32")
            throw ParseError("safetensors: tensor '" + it.key() + "' has unsupported dtype '" +
                             meta.value("dtype", "") + "' (only F32)");
        SafeTensor t;
        std::uint64_t count = 1;
        for (const auto& d : meta.at("shape")) {
            t.shape.push_back(d.get<std::int64_t>());
            count *= static_cast<std::uint64_t>(t.shape.back());
        }
        const std::uint64_t begin = meta.at("data_offsets").at(0).get<std::uint64_t>();
        const std::uint64_t end = meta.at("data_offsets").at(1).get<std::uint64_t>();
        if (end < begin || end > buffer_len || end - begin != count * sizeof(float))
            throw ParseError("safetensors: tensor '" + it.key() + "' has inconsistent offsets");
        t.data.resize(count);
        std::memcpy(t.data.data(), buffer + begin, end - begin);
        tensors.emplace(it.key(), std::move(t));
    }
    return tensors;
}

void save_safetensors(const std::filesystem::path& file, const TensorMap& tensors) {
    nlohmann::ordered_json header;
    std::uint64_t offset = 0;
    for (const auto& [name, t] : tensors) {
        const std::uint64_t bytes = t.data.size() * sizeof(float);
        header[name] = {{"dtype", "F32"},
                        {"shape", t.shape},
                        {"data_offsets", {offset, offset + bytes}}};
        offset += bytes;
    }
    const std::string header_text = header.dump();

    std::ofstream out(file, std::ios::binary);
    if (!out) throw ParseError("safetensors: cannot write " + file.string());
    write_le64(out, header_text.size());
    out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
    for (const auto& [name, t] : tensors)
        out.write(reinterpret_cast<const char*>(t.data.data()),
                  static_cast<std::streamsize>(t.data.size() * sizeof(float)));
}

}  // namespace entailguard
