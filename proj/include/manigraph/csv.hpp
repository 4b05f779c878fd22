#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace manigraph {

// CSV writer with fixed float formatting ("%.12g"), so identical runs emit
// byte-identical artifacts.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);

    CsvWriter& field(const std::string& v);
    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
    CsvWriter& field(std::size_t v) { return field(static_cast<long long>(v)); }
    void end_row();

    const std::string& path() const { return path_; }

private:
    void sep();
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::size_t written_ = 0;
};

std::string format_double(double v);

}  // namespace manigraph
