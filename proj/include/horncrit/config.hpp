#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace horncrit {

// Every tunable the CLI accepts, with its default. Config files are flat
// key=value lines ('#' comments); flags win over file values. The struct
// round-trips losslessly through dump/load.
struct RunConfig {
    // domain
    int l = 1;
    int m = 2;
    std::string profile = "power";  // power | logpower | constant
    double gamma = 0.5;
    double a = 1.0;

    // tail tests
    std::string s0 = "auto";    // classify: auto = 10; lyapunov: auto = admissible
    std::string smax = "auto";  // lyapunov: auto = 1e4 * s0
    int kmax = 40;
    bool volume = false;

    // lyapunov
    std::string sign = "plus";
    std::string verify = "none";  // none | all

    // simulate
    std::string mode = "reduced";
    double start_rho = 2.0;
    double start_r = -1.0;  // auto: H(start_rho)/2
    double inner = 1.0;
    double outer = 5.0;
    double tmax = 1e6;
    double h = 1e-3;
    int paths = 1000;

    // experiments
    double tend = 50.0;
    double rho0 = 1.0;
    double rho1 = 2.0;
    std::string rlist = "4,8,16,32";
    std::string tgrid = "1,2,4,8";
    double start_level = -1.0;  // supermartingale: auto = 4 * s0
    bool convergence = false;

    // capacity
    std::string nlist = "4,8,16,32";
    double mesh_h = -1.0;  // auto
    double rho_in = 1.0;

    // global
    std::uint64_t seed = 12345;
    int threads = 0;  // 0 = hardware
    std::string out;
    std::string svg;
    std::string evidence;

    std::string dump() const;
    // Parses flat key=value text; throws std::invalid_argument on unknown
    // keys or malformed lines.
    void load_text(const std::string& text);
    void load_file(const std::string& path);
};

std::vector<double> parse_double_list(const std::string& csv_list);

}  // namespace horncrit
