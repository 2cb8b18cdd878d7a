#include "format.hpp"

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "qdk/errors.hpp"

namespace qdk::cli {

Format parse_format(const std::string& name) {
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ValidationError("unknown output format '" + name + "' (text, csv, json)");
}

std::string fixed6(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

void write_text_row(std::ostream& out, const std::string& label, const std::string& value) {
    out << std::left << std::setw(34) << label << std::right << std::setw(14) << value << '\n';
}

}  // namespace qdk::cli
