#include "horncrit/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "horncrit/csv.hpp"

namespace horncrit {

namespace {

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

double to_double(const std::string& v) {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("bad number: " + v);
    return d;
}

int to_int(const std::string& v) {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("bad integer: " + v);
    return i;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("bad boolean: " + v);
}

const std::vector<Field>& fields() {
    auto D = [](double RunConfig::*p) {
        return Field{nullptr,
                     [p](const RunConfig& c) { return CsvWriter::format_double(c.*p); },
                     [p](RunConfig& c, const std::string& v) { c.*p = to_double(v); }};
    };
    auto I = [](int RunConfig::*p) {
        return Field{nullptr, [p](const RunConfig& c) { return std::to_string(c.*p); },
                     [p](RunConfig& c, const std::string& v) { c.*p = to_int(v); }};
    };
    auto S = [](std::string RunConfig::*p) {
        return Field{nullptr, [p](const RunConfig& c) { return c.*p; },
                     [p](RunConfig& c, const std::string& v) { c.*p = v; }};
    };
    auto B = [](bool RunConfig::*p) {
        return Field{nullptr,
                     [p](const RunConfig& c) { return std::string(c.*p ? "true" : "false"); },
                     [p](RunConfig& c, const std::string& v) { c.*p = to_bool(v); }};
    };
    auto named = [](const char* k, Field f) {
        f.key = k;
        return f;
    };
    static const std::vector<Field> table = {
        named("l", I(&RunConfig::l)),
        named("m", I(&RunConfig::m)),
        named("profile", S(&RunConfig::profile)),
        named("gamma", D(&RunConfig::gamma)),
        named("a", D(&RunConfig::a)),
        named("s0", S(&RunConfig::s0)),
        named("smax", S(&RunConfig::smax)),
        named("kmax", I(&RunConfig::kmax)),
        named("volume", B(&RunConfig::volume)),
        named("sign", S(&RunConfig::sign)),
        named("verify", S(&RunConfig::verify)),
        named("mode", S(&RunConfig::mode)),
        named("start-rho", D(&RunConfig::start_rho)),
        named("start-r", D(&RunConfig::start_r)),
        named("inner", D(&RunConfig::inner)),
        named("outer", D(&RunConfig::outer)),
        named("tmax", D(&RunConfig::tmax)),
        named("h", D(&RunConfig::h)),
        named("paths", I(&RunConfig::paths)),
        named("tend", D(&RunConfig::tend)),
        named("rho0", D(&RunConfig::rho0)),
        named("rho1", D(&RunConfig::rho1)),
        named("rlist", S(&RunConfig::rlist)),
        named("tgrid", S(&RunConfig::tgrid)),
        named("start-level", D(&RunConfig::start_level)),
        named("convergence", B(&RunConfig::convergence)),
        named("nlist", S(&RunConfig::nlist)),
        named("mesh-h", D(&RunConfig::mesh_h)),
        named("rho-in", D(&RunConfig::rho_in)),
        named("seed",
              Field{nullptr,
                    [](const RunConfig& c) { return std::to_string(c.seed); },
                    [](RunConfig& c, const std::string& v) { c.seed = std::stoull(v); }}),
        named("threads", I(&RunConfig::threads)),
        named("out", S(&RunConfig::out)),
        named("svg", S(&RunConfig::svg)),
        named("evidence", S(&RunConfig::evidence)),
    };
    return table;
}

}  // namespace

std::string RunConfig::dump() const {
    std::ostringstream os;
    os << "# horncrit configuration\n";
    for (const auto& f : fields()) os << f.key << "=" << f.get(*this) << "\n";
    return os.str();
}

void RunConfig::load_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        bool found = false;
        for (const auto& f : fields()) {
            if (key == f.key) {
                f.set(*this, value);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    load_text(os.str());
}

std::vector<double> parse_double_list(const std::string& csv_list) {
    std::vector<double> out;
    std::istringstream is(csv_list);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(to_double(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: " + csv_list);
    return out;
}

}  // namespace horncrit
