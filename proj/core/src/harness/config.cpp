#include "xva/harness/config.hpp"

#include "xva/common/require.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace xva::harness {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    XVA_REQUIRE(false, "config: invalid boolean '" << v << "'");
    return false;
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

} // namespace

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
    if (key == "rate_curve") rate_curve = value;
    else if (key == "credit_curve") credit_curve = value;
    else if (key == "credit_curve2") credit_curve2 = value;
    else if (key == "lgd") lgd = std::stod(value);
    else if (key == "rho") rho = std::stod(value);
    else if (key == "mode") mode = value;
    else if (key == "discounting") discounting = value;
    else if (key == "pair_weight") pair_weight = value;
    else if (key == "notional") notional = std::stod(value);
    else if (key == "fixed_rate") fixed_rate = std::stod(value);
    else if (key == "maturity_years") maturity_years = std::stoi(value);
    else if (key == "receive_fixed") receive_fixed = parse_bool(value);
    else if (key == "kappa") kappa = std::stod(value);
    else if (key == "sigma") sigma = std::stod(value);
    else if (key == "steps_per_period") steps_per_period = std::stoi(value);
    else if (key == "paths") paths = std::stoull(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "workers") workers = std::stoi(value);
    else if (key == "bump_bp") bump_bp = parse_list(value);
    else if (key == "estimator") estimator = value;
    else if (key == "out_dir") out_dir = value;
    else if (key == "timing") timing = value;
    else
        XVA_REQUIRE(false, "config: unknown key '" << key << "'");
}

void ExperimentConfig::validate() const {
    XVA_REQUIRE(paths >= 1, "config: paths must be >= 1");
    XVA_REQUIRE(lgd >= 0.0 && lgd <= 1.0, "config: lgd " << lgd << " outside [0,1]");
    XVA_REQUIRE(maturity_years >= 1, "config: maturity_years must be >= 1");
    XVA_REQUIRE(kappa > 0.0, "config: kappa must be positive");
    XVA_REQUIRE(sigma >= 0.0, "config: sigma must be nonnegative");
    XVA_REQUIRE(steps_per_period >= 1, "config: steps_per_period must be >= 1");
    XVA_REQUIRE(mode == "unilateral" || mode == "bilateral",
                "config: mode '" << mode << "' not one of unilateral|bilateral");
    XVA_REQUIRE(discounting == "curve" || discounting == "pathwise",
                "config: discounting '" << discounting << "'");
    XVA_REQUIRE(pair_weight == "copula" || pair_weight == "survivor_free",
                "config: pair_weight '" << pair_weight << "'");
    XVA_REQUIRE(timing == "wall" || timing == "off", "config: timing '" << timing << "'");
    const std::vector<std::string> known = {"price", "ad",   "fd",   "cd",  "ad2",
                                            "fdad",  "cdad", "dist", "all"};
    XVA_REQUIRE(std::find(known.begin(), known.end(), estimator) != known.end(),
                "config: unknown estimator '" << estimator << "'");
    for (double b : bump_bp) XVA_REQUIRE(b > 0.0, "config: bump " << b << " bp not positive");
    XVA_REQUIRE(mode == "unilateral" || !credit_curve2.empty(),
                "config: bilateral mode needs credit_curve2");
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    XVA_REQUIRE(in.good(), "config: cannot open '" << path << "'");
    ExperimentConfig cfg;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        XVA_REQUIRE(eq != std::string::npos, "config row " << row << ": expected key = value");
        cfg.apply(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

} // namespace xva::harness
