#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace horncrit {

// RFC-4180-style writer: mandatory header row, '.' decimal point, numbers at
// 17 significant digits so identical runs produce byte-identical files.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    CsvWriter& cell(const std::string& s);
    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(unsigned long long v);
    void end_row();

    std::string str() const;
    void write_file(const std::string& path) const;

    static std::string format_double(double v);

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> current_;
};

}  // namespace horncrit
