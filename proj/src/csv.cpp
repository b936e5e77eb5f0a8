#include "horncrit/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace horncrit {

std::string CsvWriter::format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
std::string escape(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

CsvWriter& CsvWriter::cell(const std::string& s) {
    current_.push_back(escape(s));
    return *this;
}

CsvWriter& CsvWriter::cell(double v) {
    current_.push_back(format_double(v));
    return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
    current_.push_back(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long v) {
    current_.push_back(std::to_string(v));
    return *this;
}

void CsvWriter::end_row() {
    if (current_.size() != header_.size())
        throw std::logic_error("CsvWriter: row width does not match header");
    rows_.push_back(current_);
    current_.clear();
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) os << ',';
        os << escape(header_[i]);
    }
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << str();
}

}  // namespace horncrit
