#include "qdk/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdk/errors.hpp"

namespace qdk {

namespace {

std::size_t read_dim(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("state file: missing '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("state file: '") + key + "' must be an integer");
    const auto d = v.get<long long>();
    if (d < 1) throw ParseError(std::string("state file: '") + key + "' must be positive");
    return static_cast<std::size_t>(d);
}

}  // namespace

DensityMatrix parse_state(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("state file: top level must be an object");
    const std::size_t dim_a = read_dim(doc, "dimA");
    const std::size_t dim_b = read_dim(doc, "dimB");
    const std::size_t n = dim_a * dim_b;

    if (!doc.contains("matrix") || !doc.at("matrix").is_array())
        throw ParseError("state file: 'matrix' must be an array of rows");
    const auto& rows = doc.at("matrix");
    if (rows.size() != n)
        throw ParseError("state file: expected " + std::to_string(n) + " rows, found " +
                         std::to_string(rows.size()));

    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n)
            throw ParseError("state file: every row must hold " + std::to_string(n) + " entries");
        for (const auto& z : row) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("state file: entries must be [re, im] number pairs");
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return validate_density(ComplexMatrix(n, n, std::move(entries)), dim_a, dim_b);
}

DensityMatrix load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

std::string serialize_state(const DensityMatrix& rho) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << "{\n  \"dimA\": " << rho.dim_a() << ",\n  \"dimB\": " << rho.dim_b()
       << ",\n  \"matrix\": [\n";
    const auto& m = rho.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ", ";
            os << "[" << m(i, j).real() << ", " << m(i, j).imag() << "]";
        }
        os << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace qdk
