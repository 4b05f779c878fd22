#include "manigraph/csv.hpp"

#include "manigraph/common.hpp"

#include <cstdio>

namespace manigraph {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns.size()) {
    if (!out_) fail("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::sep() {
    if (written_) out_ << ',';
    ++written_;
}

CsvWriter& CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(long long v) {
    sep();
    out_ << v;
    return *this;
}

void CsvWriter::end_row() {
    if (written_ != columns_) fail("CsvWriter: row width mismatch in " + path_);
    out_ << '\n';
    written_ = 0;
}

}  // namespace manigraph
