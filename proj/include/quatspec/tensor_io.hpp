#pragma once

// Quaternion tensor file format: a JSON document with "shape" plus four
// flat row-major component arrays "w", "x", "y", "z", and an optional
// "support" footprint for clipping.  Numbers are written with 17
// significant digits so a read/write/read cycle is value-identical.
// CSV output uses an "index,value" header, LF endings and '.' decimals.

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "quatspec/tensor.hpp"

namespace quatspec {

struct TensorFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QTensorFile {
    QTensor tensor;
    std::optional<std::vector<std::size_t>> support;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::vector<double> component_array(const nlohmann::json& doc, const char* key,
                                           std::size_t expected) {
    if (!doc.contains(key) || !doc[key].is_array())
        throw TensorFileError(std::string("tensor file: missing array \"") + key + "\"");
    std::vector<double> out;
    out.reserve(doc[key].size());
    for (const auto& v : doc[key]) {
        if (!v.is_number()) throw TensorFileError("tensor file: non-numeric component");
        out.push_back(v.get<double>());
    }
    if (out.size() != expected)
        throw TensorFileError(std::string("tensor file: \"") + key +
                              "\" length does not match the shape");
    return out;
}

}  // namespace detail

inline QTensorFile parse_qtensor(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw TensorFileError(std::string("tensor file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("shape") || !doc["shape"].is_array())
        throw TensorFileError("tensor file: missing \"shape\"");

    std::vector<std::size_t> shape;
    for (const auto& v : doc["shape"]) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
            throw TensorFileError("tensor file: shape entries must be positive integers");
        shape.push_back(v.get<std::size_t>());
    }
    if (shape.empty() || shape.size() > 2)
        throw TensorFileError("tensor file: shape must be 1D or 2D");

    std::size_t total = 1;
    for (std::size_t d : shape) total *= d;
    const auto w = detail::component_array(doc, "w", total);
    const auto x = detail::component_array(doc, "x", total);
    const auto y = detail::component_array(doc, "y", total);
    const auto z = detail::component_array(doc, "z", total);

    QTensorFile out{QTensor{shape}, std::nullopt};
    for (std::size_t i = 0; i < total; ++i) out.tensor[i] = Quaternion{w[i], x[i], y[i], z[i]};

    if (doc.contains("support")) {
        if (!doc["support"].is_array() || doc["support"].size() != shape.size())
            throw TensorFileError("tensor file: support rank must match the shape");
        std::vector<std::size_t> support;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            const auto& v = doc["support"][d];
            if (!v.is_number_unsigned() || v.get<std::size_t>() == 0 ||
                v.get<std::size_t>() > shape[d])
                throw TensorFileError("tensor file: support exceeds the shape");
            support.push_back(v.get<std::size_t>());
        }
        out.support = std::move(support);
    }
    return out;
}

inline std::string serialize_qtensor(const QTensorFile& file) {
    std::ostringstream out;
    out << "{\n  \"shape\": [";
    for (std::size_t d = 0; d < file.tensor.rank(); ++d)
        out << (d ? ", " : "") << file.tensor.shape()[d];
    out << "],\n";
    const auto emit = [&](const char* key, auto pick) {
        out << "  \"" << key << "\": [";
        for (std::size_t i = 0; i < file.tensor.size(); ++i)
            out << (i ? ", " : "") << detail::format_double(pick(file.tensor[i]));
        out << "]";
    };
    emit("w", [](const Quaternion& q) { return q.w; });
    out << ",\n";
    emit("x", [](const Quaternion& q) { return q.x; });
    out << ",\n";
    emit("y", [](const Quaternion& q) { return q.y; });
    out << ",\n";
    emit("z", [](const Quaternion& q) { return q.z; });
    if (file.support) {
        out << ",\n  \"support\": [";
        for (std::size_t d = 0; d < file.support->size(); ++d)
            out << (d ? ", " : "") << (*file.support)[d];
        out << "]";
    }
    out << "\n}\n";
    return out.str();
}

inline QTensorFile read_qtensor_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TensorFileError("tensor file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_qtensor(buf.str());
}

inline void write_qtensor_file(const std::string& path, const QTensorFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TensorFileError("tensor file: cannot write " + path);
    out << serialize_qtensor(file);
}

// index,value rows, ascending index, LF endings.
inline std::string serialize_csv(const std::vector<double>& values) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += detail::format_double(values[i]);
        out += '\n';
    }
    return out;
}

}  // namespace quatspec
