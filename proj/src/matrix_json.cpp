#include "qhqm/matrix_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qhqm {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    has_sibling_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    has_sibling_.pop_back();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    has_sibling_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    has_sibling_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    separate();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    separate();
    out_ += '"';
    for (char c : v) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof esc, "\\u%04x", c);
                    out_ += esc;
                } else {
                    out_ += c;
                }
        }
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    out_ += "null";
    return *this;
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!has_sibling_.empty()) {
        if (has_sibling_.back()) out_ += ',';
        has_sibling_.back() = true;
    }
}

void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
    w.begin_object();
    w.key("rows").value(m.rows());
    w.key("cols").value(m.cols());
    w.key("data").begin_array();
    for (const Complex& z : m.data()) {
        w.begin_array();
        w.value(z.real());
        w.value(z.imag());
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

std::string matrix_to_json(const ComplexMatrix& m) {
    JsonWriter w;
    write_matrix(w, m);
    return w.str();
}

namespace {

using nlohmann::json;

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError("matrix: missing rows/cols/data");
    const json& jr = j.at("rows");
    const json& jc = j.at("cols");
    if (!jr.is_number_integer() || !jc.is_number_integer())
        throw ParseError("matrix: rows/cols must be integers");
    const auto rows = jr.get<std::int64_t>();
    const auto cols = jc.get<std::int64_t>();
    if (rows <= 0 || cols <= 0) throw ParseError("matrix: rows/cols must be positive");
    const json& data = j.at("data");
    if (!data.is_array()) throw ParseError("matrix: data must be an array");
    if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw ParseError("matrix: data length does not equal rows * cols");

    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const json& pair : data) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw ParseError("matrix: each entry must be a [re, im] number pair");
        const double re = pair[0].get<double>();
        const double im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError("matrix: non-finite entry");
        entries.emplace_back(re, im);
    }
    return ComplexMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                         std::move(entries));
}

json parse_text(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

ComplexMatrix matrix_from_json_text(std::string_view text) {
    return matrix_from_json(parse_text(text));
}

ComplexMatrix read_matrix_file(const std::string& path) {
    return matrix_from_json(parse_text(slurp(path)));
}

std::vector<ComplexMatrix> read_matrix_list_file(const std::string& path) {
    const json j = parse_text(slurp(path));
    if (!j.is_array()) throw ParseError("matrix list: expected a top-level JSON array");
    std::vector<ComplexMatrix> out;
    out.reserve(j.size());
    for (const json& item : j) out.push_back(matrix_from_json(item));
    return out;
}

}  // namespace qhqm
