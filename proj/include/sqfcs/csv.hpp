// csv.hpp — deterministic CSV emission: comma separators, '.' decimal
// point, doubles at 15 significant digits, booleans as 0/1.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

namespace sqfcs {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    CsvWriter& field(std::string_view s) {
        sep();
        os_ << s;
        return *this;
    }
    CsvWriter& field(double v) { return field(std::string_view(format_double(v))); }
    CsvWriter& field(long long v) {
        sep();
        os_ << v;
        return *this;
    }
    CsvWriter& field(int v) { return field(static_cast<long long>(v)); }
    CsvWriter& field(bool v) { return field(static_cast<long long>(v ? 1 : 0)); }

    void end_row() {
        os_ << '\n';
        first_ = true;
    }

  private:
    void sep() {
        if (!first_) os_ << ',';
        first_ = false;
    }

    std::ostream& os_;
    bool first_ = true;
};

}  // namespace sqfcs
