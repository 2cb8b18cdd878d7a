#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"
#include "qdk/channels.hpp"
#include "qdk/discord.hpp"
#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/monotonicity.hpp"
#include "qdk/relent.hpp"
#include "qdk/state_io.hpp"

namespace qdk::cli {

namespace {

using json = nlohmann::ordered_json;

// One output cell; JSON keeps numbers and booleans typed.
struct Cell {
    enum class Kind { Number, Bool, Text } kind = Kind::Text;
    double number = 0.0;
    bool flag = false;
    std::string text;

    static Cell num(double v) { return {Kind::Number, v, false, fixed6(v)}; }
    static Cell boolean(bool b) { return {Kind::Bool, 0.0, b, b ? "true" : "false"}; }
    static Cell str(std::string s) { return {Kind::Text, 0.0, false, std::move(s)}; }

    json to_json() const {
        switch (kind) {
            case Kind::Number: return round6(number);
            case Kind::Bool: return flag;
            case Kind::Text: break;
        }
        return text;
    }
};

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

void emit_csv(std::ostream& out, const Table& t) {
    write_csv_row(out, t.headers);
    for (const auto& row : t.rows) {
        std::vector<std::string> fields;
        for (const auto& c : row) fields.push_back(c.text);
        write_csv_row(out, fields);
    }
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.headers[i]] = row[i].to_json();
        rows.push_back(std::move(obj));
    }
    return rows;
}

void emit_text_table(std::ostream& out, const Table& t) {
    std::vector<std::size_t> width(t.headers.size());
    for (std::size_t i = 0; i < t.headers.size(); ++i) width[i] = t.headers[i].size();
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].text.size());
    const auto line = [&](const auto& get) {
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string s = get(i);
            out << (i ? "  " : "") << std::string(width[i] - s.size(), ' ') << s;
        }
        out << '\n';
    };
    line([&](std::size_t i) { return t.headers[i]; });
    for (const auto& row : t.rows) line([&](std::size_t i) { return row[i].text; });
}

// ---- report columns -------------------------------------------------------

struct Column {
    const char* key;
    const char* label;
    bool bits;
    bool needs_relent;
    std::function<Cell(const MeasureReport&)> value;
};

const std::vector<Column>& columns() {
    static const std::vector<Column> all = {
        {"entropy_a", "S(A)", true, false, [](const MeasureReport& r) { return Cell::num(r.entropy_a); }},
        {"entropy_b", "S(B)", true, false, [](const MeasureReport& r) { return Cell::num(r.entropy_b); }},
        {"entropy_ab", "S(AB)", true, false, [](const MeasureReport& r) { return Cell::num(r.entropy_ab); }},
        {"mutual_information", "I_Q", true, false,
         [](const MeasureReport& r) { return Cell::num(r.mutual_information); }},
        {"naive_conditional_given_a", "S(B|A) = S(AB) - S(A)", true, false,
         [](const MeasureReport& r) { return Cell::num(r.naive_conditional_on_a); }},
        {"naive_conditional_given_b", "S(A|B) = S(AB) - S(B)", true, false,
         [](const MeasureReport& r) { return Cell::num(r.naive_conditional_on_b); }},
        {"measured_conditional", "measured conditional entropy", true, false,
         [](const MeasureReport& r) { return Cell::num(r.measured_conditional); }},
        {"classical", "classical correlations C", true, false,
         [](const MeasureReport& r) { return Cell::num(r.classical); }},
        {"discord", "discord", true, false, [](const MeasureReport& r) { return Cell::num(r.discord); }},
        {"rel_ent_of_entanglement", "rel. entropy of entanglement", true, true,
         [](const MeasureReport& r) { return Cell::num(r.rel_ent_entanglement); }},
        {"rel_ent_of_discord", "rel. entropy to classical states", true, true,
         [](const MeasureReport& r) { return Cell::num(r.rel_ent_discord); }},
        {"zero_discord", "zero discord", false, false,
         [](const MeasureReport& r) { return Cell::boolean(r.zero_discord); }},
        {"pinch_distance", "min dephasing distance", false, false,
         [](const MeasureReport& r) { return Cell::num(r.pinch_distance); }},
    };
    return all;
}

const std::vector<std::pair<std::string, std::string>>& measure_aliases() {
    static const std::vector<std::pair<std::string, std::string>> aliases = {
        {"S_A", "entropy_a"}, {"S_B", "entropy_b"}, {"S_AB", "entropy_ab"},
        {"I_Q", "mutual_information"}, {"C", "classical"}, {"D", "discord"},
        {"E", "rel_ent_of_entanglement"}, {"REE", "rel_ent_of_entanglement"},
        {"RED", "rel_ent_of_discord"},
    };
    return aliases;
}

std::vector<const Column*> selected_columns(const Settings& s) {
    std::vector<const Column*> out;
    for (const auto& c : columns())
        if (s.measures.empty() || std::find(s.measures.begin(), s.measures.end(), c.key) != s.measures.end())
            out.push_back(&c);
    return out;
}

std::string header_of(const Column& c) { return std::string(c.key) + (c.bits ? "_bits" : ""); }

ReportOptions report_options(const Settings& s) {
    ReportOptions o;
    o.measured = s.measured;
    o.relative_entropies = false;
    for (const Column* c : selected_columns(s)) o.relative_entropies |= c->needs_relent;
    return o;
}

std::string dims_of(const MeasureReport& r) { return std::to_string(r.dim_a) + "x" + std::to_string(r.dim_b); }

std::string angles_text(const std::vector<double>& a) {
    std::string s;
    for (double v : a) s += (s.empty() ? "" : " ") + fixed6(v);
    return s.empty() ? "-" : s;
}

int convergence_status(const std::vector<MeasureReport>& reports, const Settings& s) {
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.all_converged(); });
    if (!ok) std::cerr << "warning: an optimizer stopped at its iteration budget before meeting tolerance\n";
    return convergence_exit_code(ok, s.strict);
}

void emit_report(std::ostream& out, const MeasureReport& r, const Settings& s) {
    const auto cols = selected_columns(s);
    if (s.format == Format::Text) {
        write_text_row(out, "state", r.id);
        write_text_row(out, "dims", dims_of(r));
        write_text_row(out, "measured side", to_string(r.measured));
        out << '\n';
        write_text_row(out, "quantity", "bits");
        for (const Column* c : cols)
            if (c->bits) write_text_row(out, c->label, c->value(r).text);
        out << '\n';
        for (const Column* c : cols)
            if (!c->bits) write_text_row(out, c->label, c->value(r).text);
        write_text_row(out, "argmin angles (rad)", angles_text(r.argmin_angles));
        write_text_row(out, "optimizers converged", r.all_converged() ? "true" : "false");
        return;
    }
    if (s.format == Format::Csv) {
        Table t{{"state", "dimA", "dimB", "measured"}, {}};
        std::vector<Cell> row{Cell::str(r.id), Cell::str(std::to_string(r.dim_a)), Cell::str(std::to_string(r.dim_b)),
                              Cell::str(to_string(r.measured))};
        for (const Column* c : cols) {
            t.headers.push_back(header_of(*c));
            row.push_back(c->value(r));
        }
        t.headers.insert(t.headers.end(), {"argmin_angles_rad", "converged"});
        row.push_back(Cell::str(angles_text(r.argmin_angles)));
        row.push_back(Cell::boolean(r.all_converged()));
        t.rows.push_back(std::move(row));
        emit_csv(out, t);
        return;
    }
    json j;
    j["state"] = r.id;
    j["dimA"] = r.dim_a;
    j["dimB"] = r.dim_b;
    j["measured"] = to_string(r.measured);
    j["units"] = "bits";
    json values = json::object();
    for (const Column* c : cols) values[c->key] = c->value(r).to_json();
    j["values"] = std::move(values);
    json angles = json::array();
    for (double a : r.argmin_angles) angles.push_back(round6(a));
    j["argmin_angles_rad"] = std::move(angles);
    j["converged"] = r.all_converged();
    out << j.dump(2) << '\n';
}

double parse_double(std::string_view text, const std::string& what) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError(what + ": '" + std::string(text) + "' is not a finite number");
    return v;
}

// ---- demos ----------------------------------------------------------------

struct DemoOutcome {
    bool passed = true;
    std::vector<std::string> narrative;
    Table table;
};

DemoOutcome demo_discord_from_lo(const Settings& s) {
    DemoOutcome d;
    const auto before = named_state("cc-mixture");
    const auto after = apply(before, LocalChannel{counterexample_channel(), Subsystem::B});
    const auto db = discord(before, s.optimizer, s.measured);
    const auto da = discord(after, s.optimizer, s.measured);
    const double rb = rel_ent_of_discord(before, s.optimizer).value;
    const double ra = rel_ent_of_discord(after, s.optimizer).value;
    d.narrative = {
        "Start from (|00><00| + |11><11|)/2, a classically correlated state with no discord.",
        "Apply on B the local channel |0> -> |0>, |1> -> |+> (Kraus set {|0><0|, |+><1|}).",
        "The output (|00><00| + |1+><1+|)/2 has non-orthogonal conditional states on B,",
        "so a purely local operation created discord while mutual information dropped.",
    };
    d.table.headers = {"stage", "mutual_information_bits", "discord_bits", "rel_ent_of_discord_bits"};
    d.table.rows.push_back({Cell::str("before"), Cell::num(db.mutual_information), Cell::num(db.discord), Cell::num(rb)});
    d.table.rows.push_back({Cell::str("after"), Cell::num(da.mutual_information), Cell::num(da.discord), Cell::num(ra)});
    d.passed = db.discord < 1e-6 && da.discord > 0.01;
    d.narrative.push_back("check: discord before < 1e-6 and after > 0.01: " + std::string(d.passed ? "holds" : "FAILS"));
    return d;
}

DemoOutcome demo_pure_state_identities(const Settings& s) {
    DemoOutcome d;
    d.narrative = {
        "For pure states the classical correlations and the discord both equal the",
        "entanglement entropy S(A), and together they add up to I_Q = 2 S(A).",
    };
    d.table.headers = {"sample", "entropy_a_bits", "classical_bits", "discord_bits", "mutual_information_bits", "holds"};
    const auto ids = parallel_map<PureStateIdentities>(20, s.threads, [&](std::size_t i) {
        return pure_state_identities(random_pure(2, 2, sample_seed(s.optimizer.seed, i)), s.optimizer);
    });
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& id = ids[i];
        d.passed &= id.all_hold();
        d.table.rows.push_back({Cell::str(std::to_string(i)), Cell::num(id.entanglement), Cell::num(id.classical),
                                Cell::num(id.discord), Cell::num(id.mutual_information),
                                Cell::boolean(id.all_hold())});
    }
    d.narrative.push_back("check: all identities within 1e-4 on 20 random pure states: " +
                          std::string(d.passed ? "holds" : "FAILS"));
    return d;
}

DemoOutcome demo_negative_conditional(const Settings& s) {
    DemoOutcome d;
    d.narrative = {
        "The entropic conditional entropy S(AB) - S(B) can be negative for entangled",
        "states, while the measurement-based conditional entropy never is.",
    };
    d.table.headers = {"state", "naive_conditional_bits", "measured_conditional_bits"};
    const auto row = [&](const std::string& label, const DensityMatrix& rho) {
        const double naive = naive_conditional(rho, s.measured);
        const double measured = measured_conditional_entropy(rho, s.optimizer, s.measured).value;
        d.table.rows.push_back({Cell::str(label), Cell::num(naive), Cell::num(measured)});
        return std::pair{naive, measured};
    };
    const auto [bell_naive, bell_measured] = row("bell-phi-plus", named_state("bell-phi-plus"));
    for (double p : {0.25, 0.5, 0.75})
        row("werner p=" + fixed6(p), named_state("werner", {{"p", p}}));
    row("cc-mixture", named_state("cc-mixture"));
    d.passed = std::abs(bell_naive + 1.0) < 1e-9 && std::abs(bell_measured) < 1e-6;
    for (const auto& r : d.table.rows) d.passed &= r[2].number >= -1e-9;
    d.narrative.push_back("check: Bell naive conditional = -1 and measured conditionals >= 0: " +
                          std::string(d.passed ? "holds" : "FAILS"));
    return d;
}

DemoOutcome demo_werner_gap(const Settings& s) {
    DemoOutcome d;
    d.narrative = {
        "Along the Werner family p Phi+ + (1 - p) I/4, compare the total correlations I_Q",
        "with the classical correlations C plus the relative entropy of entanglement E.",
        "The sum stays at or below I_Q on this family (reported, not a general theorem);",
        "it matches I_Q at p = 0 (nothing correlated) and p = 1 (pure).",
    };
    d.table.headers = {"p", "mutual_information_bits", "classical_bits", "rel_ent_of_entanglement_bits", "gap_bits"};
    constexpr int kSteps = 20;
    struct Row {
        double i, c, e;
    };
    const auto rows = parallel_map<Row>(kSteps + 1, s.threads, [&](std::size_t k) {
        const auto rho = named_state("werner", {{"p", static_cast<double>(k) / kSteps}});
        const auto br = discord(rho, s.optimizer, s.measured);
        return Row{br.mutual_information, br.classical, rel_ent_of_entanglement(rho, s.optimizer).value};
    });
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        const double gap = r.i - (r.c + r.e);
        d.passed &= gap >= -5e-3;
        if (k == 0 || k + 1 == rows.size()) d.passed &= std::abs(gap) < 5e-3;
        d.table.rows.push_back({Cell::num(static_cast<double>(k) / kSteps), Cell::num(r.i), Cell::num(r.c),
                                Cell::num(r.e), Cell::num(gap)});
    }
    d.narrative.push_back("check: gap >= -5e-3 everywhere, |gap| < 5e-3 at p = 0 and p = 1: " +
                          std::string(d.passed ? "holds" : "FAILS"));
    return d;
}

const std::vector<std::pair<std::string, std::function<DemoOutcome(const Settings&)>>>& demos() {
    static const std::vector<std::pair<std::string, std::function<DemoOutcome(const Settings&)>>> all = {
        {"discord-from-LO", demo_discord_from_lo},
        {"pure-state-identities", demo_pure_state_identities},
        {"negative-conditional", demo_negative_conditional},
        {"henderson-vedral-gap", demo_werner_gap},
    };
    return all;
}

// ---- property suites --------------------------------------------------------

struct SampleResult {
    bool violated = false;
    std::string detail;
};

using Suite = std::function<SampleResult(std::uint64_t seed, std::size_t index, const Settings&)>;

DensityMatrix sample_state(std::uint64_t seed, std::size_t index) {
    return random_density(2, 2, 1 + index % 4, seed);
}

std::vector<LocalChannel> sample_local_operation(std::uint64_t seed) {
    return {{random_local_channel(2, 1 + seed % 3, sample_seed(seed, 1)), Subsystem::A},
            {random_local_channel(2, 1 + (seed >> 8) % 3, sample_seed(seed, 2)), Subsystem::B}};
}

std::string trial_detail(const MonotonicityTrial& t) {
    return "before " + fixed6(t.before) + ", after " + fixed6(t.after);
}

SampleResult lo_trial(std::uint64_t seed, std::size_t index, const Settings& s, Measure m) {
    const auto rho = sample_state(sample_seed(seed, 0), index);
    const auto op = sample_local_operation(sample_seed(seed, 3));
    const auto t = monotonicity_trial(rho, op, m, s.optimizer);
    return {t.violated, trial_detail(t)};
}

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> all = {
        {"lo-monotonicity-mutual-info",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             return lo_trial(seed, i, s, Measure::MutualInformation);
         }},
        {"lo-monotonicity-entanglement",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             return lo_trial(seed, i, s, Measure::RelEntEntanglement);
         }},
        {"relent-data-processing",
         [](std::uint64_t seed, std::size_t, const Settings&) {
             const auto sigma = random_density(2, 2, 4, sample_seed(seed, 0));
             const auto rho = random_density(2, 2, 4, sample_seed(seed, 1));
             const auto ch = random_local_channel(4, 1 + seed % 4, sample_seed(seed, 2));
             const auto before = relative_entropy(sigma, rho);
             const auto after = relative_entropy(apply(sigma, ch), apply(rho, ch));
             const bool ok = after <= before + EntropyValue::finite(1e-9);
             return SampleResult{!ok, ok ? "" : "relative entropy grew under a channel"};
         }},
        {"discord-nonnegative",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             try {
                 const double d = discord(sample_state(seed, i), s.optimizer, s.measured).discord;
                 return SampleResult{d < 0.0, "discord " + fixed6(d)};
             } catch (const ConsistencyError& e) {
                 return SampleResult{true, e.what()};
             }
         }},
        {"mutual-information-identity",
         [](std::uint64_t seed, std::size_t i, const Settings&) {
             const auto rho = sample_state(seed, i);
             const double gap = std::abs(mutual_information(rho) - mutual_information_as_relent(rho).bits());
             return SampleResult{gap > 1e-9, "gap " + std::to_string(gap)};
         }},
        {"pure-state-identities",
         [](std::uint64_t seed, std::size_t, const Settings& s) {
             const auto id = pure_state_identities(random_pure(2, 2, seed), s.optimizer);
             return SampleResult{!id.all_hold(), "C " + fixed6(id.classical) + ", D " + fixed6(id.discord) +
                                                     ", S(A) " + fixed6(id.entanglement)};
         }},
        {"zero-discord-agreement",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             const auto v = is_zero_discord(sample_state(seed, i), 1e-4, s.optimizer, s.measured);
             return SampleResult{!v.agrees_with_discord,
                                 "pinch distance " + fixed6(v.pinch_distance) + ", discord " + fixed6(v.discord)};
         }},
        {"measurement-bounds",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             const auto rho = sample_state(seed, i);
             const double v = measured_conditional_entropy(rho, s.optimizer, s.measured).value;
             const double upper = von_neumann(reduced_state(rho, other_side(s.measured)));
             const bool bad = v < -1e-9 || v > upper + 1e-9;
             return SampleResult{bad, "value " + fixed6(v) + ", upper " + fixed6(upper)};
         }},
        {"entanglement-below-classical",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             const auto rho = sample_state(seed, i);
             const double e = rel_ent_of_entanglement(rho, s.optimizer).value;
             const double c = rel_ent_of_discord(rho, s.optimizer).value;
             return SampleResult{e > c + 1e-4, "E " + fixed6(e) + ", classical distance " + fixed6(c)};
         }},
        {"report-consistency",
         [](std::uint64_t seed, std::size_t i, const Settings& s) {
             ReportOptions o;
             o.measured = s.measured;
             o.relative_entropies = false;
             try {
                 check_consistency(compute_report(sample_state(seed, i), "sample", s.optimizer, o));
                 return SampleResult{};
             } catch (const ConsistencyError& e) {
                 return SampleResult{true, e.what()};
             }
         }},
    };
    return all;
}

void require_known(const std::string& name, const std::vector<std::string>& known, const std::string& what) {
    if (std::find(known.begin(), known.end(), name) != known.end()) return;
    std::string list;
    for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
    throw UnknownNameError("unknown " + what + " '" + name + "' (known: " + list + ")");
}

}  // namespace

// ---- public ----------------------------------------------------------------

StateParams parse_params(const std::vector<std::string>& pairs) {
    StateParams out;
    for (const auto& p : pairs) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("--param expects key=value, got '" + p + "'");
        const std::string key = p.substr(0, eq);
        if (!out.emplace(key, parse_double(std::string_view(p).substr(eq + 1), "--param " + key)).second)
            throw ValidationError("--param " + key + " given twice");
    }
    return out;
}

DensityMatrix load_source(const StateSource& src, std::string& id) {
    if (src.name.empty() == src.file.empty()) throw ValidationError("give exactly one of --state or --file");
    if (!src.file.empty()) {
        if (!src.params.empty()) throw ValidationError("--param only applies to --state");
        id = src.file;
        return load_state(src.file);
    }
    const auto params = parse_params(src.params);
    id = src.name;
    for (const auto& [k, v] : params) id += " " + k + "=" + fixed6(v);
    return named_state(src.name, params);
}

std::vector<std::string> measure_names() {
    std::vector<std::string> out;
    for (const auto& c : columns()) out.emplace_back(c.key);
    for (const auto& [alias, key] : measure_aliases()) out.push_back(alias);
    return out;
}

std::vector<std::string> resolve_measures(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    for (const auto& n : names) {
        std::string key = n;
        for (const auto& [alias, target] : measure_aliases())
            if (alias == n) key = target;
        std::vector<std::string> keys;
        for (const auto& c : columns()) keys.emplace_back(c.key);
        require_known(key, keys, "measure");
        if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
    }
    return out;
}

std::vector<std::string> demo_names() {
    std::vector<std::string> out;
    for (const auto& d : demos()) out.push_back(d.first);
    return out;
}

std::vector<std::string> scan_families() { return {"werner", "pure"}; }

std::vector<std::string> property_suites() {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.first);
    return out;
}

int convergence_exit_code(bool converged, bool strict) {
    return converged || !strict ? kSuccess : kNotConverged;
}

std::uint64_t sample_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over base and index
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int cmd_compute(const StateSource& src, const Settings& s, std::ostream& out) {
    std::string id;
    const auto rho = load_source(src, id);
    const auto report = compute_report(rho, id, s.optimizer, report_options(s));
    emit_report(out, report, s);
    return convergence_status({report}, s);
}

int cmd_demo(const std::string& name, const Settings& s, std::ostream& out) {
    require_known(name, demo_names(), "demo");
    DemoOutcome d;
    for (const auto& [n, fn] : demos())
        if (n == name) d = fn(s);
    if (s.format == Format::Json) {
        json j;
        j["demo"] = name;
        j["passed"] = d.passed;
        j["units"] = "bits";
        j["rows"] = table_json(d.table);
        out << j.dump(2) << '\n';
    } else {
        if (s.format == Format::Text) {
            out << "demo " << name << "\n\n";
            for (const auto& line : d.narrative) out << line << '\n';
            out << '\n';
        }
        emit_csv(out, d.table);
    }
    return d.passed ? kSuccess : kAssertionFailed;
}

int cmd_scan(const std::string& family, double from, double to, double step, const Settings& s,
             std::ostream& out) {
    require_known(family, scan_families(), "scan family");
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) || step <= 0.0 || from > to)
        throw ValidationError("scan needs finite from <= to and step > 0");
    const double span = (to - from) / step;
    if (span > 1e6) throw ValidationError("scan would produce more than a million rows");
    const std::size_t n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    const std::string param = family == "werner" ? "p" : "a";

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = std::min(from + static_cast<double>(i) * step, to);
    // fail on the parameter domain before any optimization runs
    for (double v : values) named_state(family, {{param, v}});

    const auto opts = report_options(s);
    const auto reports = parallel_map<MeasureReport>(n, s.threads, [&](std::size_t i) {
        return compute_report(named_state(family, {{param, values[i]}}), family, s.optimizer, opts);
    });

    Table t{{param}, {}};
    const auto cols = selected_columns(s);
    for (const Column* c : cols) t.headers.push_back(header_of(*c));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> row{Cell::num(values[i])};
        for (const Column* c : cols) row.push_back(c->value(reports[i]));
        t.rows.push_back(std::move(row));
    }
    if (s.format == Format::Json) {
        json j;
        j["family"] = family;
        j["parameter"] = param;
        j["units"] = "bits";
        j["rows"] = table_json(t);
        out << j.dump(2) << '\n';
    } else if (s.format == Format::Csv) {
        emit_csv(out, t);
    } else {
        emit_text_table(out, t);
    }
    return convergence_status(reports, s);
}

int cmd_property(const std::string& suite, std::size_t count, const Settings& s, std::ostream& out) {
    require_known(suite, property_suites(), "property suite");
    if (count == 0) throw ValidationError("property needs a positive sample count");
    Suite fn;
    for (const auto& [n, f] : suites())
        if (n == suite) fn = f;
    // Restarts inside each sample stay sequential; samples fan out.
    const auto results = parallel_map<SampleResult>(count, s.threads, [&](std::size_t i) {
        return fn(sample_seed(s.optimizer.seed, i), i, s);
    });
    std::size_t violations = 0;
    std::vector<std::pair<std::size_t, std::string>> examples;
    for (std::size_t i = 0; i < results.size(); ++i)
        if (results[i].violated) {
            ++violations;
            if (examples.size() < 5) examples.emplace_back(i, results[i].detail);
        }
    if (s.format == Format::Json) {
        json j;
        j["suite"] = suite;
        j["samples"] = count;
        j["seed"] = s.optimizer.seed;
        j["violations"] = violations;
        json ex = json::array();
        for (const auto& [i, d] : examples) ex.push_back({{"sample", i}, {"detail", d}});
        j["examples"] = std::move(ex);
        out << j.dump(2) << '\n';
    } else if (s.format == Format::Csv) {
        write_csv_row(out, {"suite", "samples", "seed", "violations"});
        write_csv_row(out, {suite, std::to_string(count), std::to_string(s.optimizer.seed), std::to_string(violations)});
    } else {
        out << "suite " << suite << ": " << count << " samples, seed " << s.optimizer.seed << ", " << violations
            << " violations\n";
        for (const auto& [i, d] : examples) out << "  sample " << i << ": " << d << '\n';
        out << (violations == 0 ? "PASS" : "FAIL") << '\n';
    }
    return violations == 0 ? kSuccess : kAssertionFailed;
}

int cmd_random(std::size_t dim_a, std::size_t dim_b, std::size_t rank, bool pure, const Settings& s,
               std::ostream& out) {
    const std::uint64_t seed = s.optimizer.seed;
    const auto rho = pure ? density_from_pure(random_pure(dim_a, dim_b, seed))
                          : random_density(dim_a, dim_b, rank == 0 ? dim_a * dim_b : rank, seed);
    const std::string id = std::string(pure ? "random-pure" : "random") + " seed=" + std::to_string(seed);
    const auto report = compute_report(rho, id, s.optimizer, report_options(s));
    if (s.format == Format::Json) {
        std::ostringstream body;
        emit_report(body, report, s);
        json j;
        j["state"] = json::parse(serialize_state(rho));
        j["report"] = json::parse(body.str());
        out << j.dump(2) << '\n';
    } else {
        if (s.format == Format::Text) out << serialize_state(rho) << "\n";
        emit_report(out, report, s);
    }
    return convergence_status({report}, s);
}

}  // namespace qdk::cli
