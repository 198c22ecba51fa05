#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qhqm/complex_matrix.hpp"

namespace qhqm {

/// 17-significant-digit decimal rendering; round-trips every finite double.
std::string format_double(double v);

/// Minimal deterministic JSON emitter: insertion order is output order and
/// all floats go through format_double, so identical inputs produce
/// byte-identical documents.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::size_t v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null();

    const std::string& str() const noexcept { return out_; }

private:
    void separate();

    std::string out_;
    std::vector<bool> has_sibling_;
    bool after_key_ = false;
};

/// {"rows": N, "cols": M, "data": [[re, im], ...]} row-major.
void write_matrix(JsonWriter& w, const ComplexMatrix& m);
std::string matrix_to_json(const ComplexMatrix& m);

/// Parses the matrix object format; rejects wrong-length data arrays,
/// non-finite numbers, and non-positive dimensions with ParseError.
ComplexMatrix matrix_from_json_text(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

/// Top-level JSON array of matrix objects (may be empty).
std::vector<ComplexMatrix> read_matrix_list_file(const std::string& path);

}  // namespace qhqm
