#include "nomafd/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nomafd/errors.hpp"

namespace nomafd {

using nlohmann::json;

std::vector<double> RunConfig::resolved_hd_thresholds() const {
  if (hd_thresholds) return *hd_thresholds;
  if (hd_rule == HdThresholdRule::rate_halving) return hd_thresholds_from_fd(system.thresholds);
  return system.thresholds;
}

BaselineConfig RunConfig::baseline(BaselineMode mode) const {
  BaselineConfig b;
  b.base = system;
  b.mode = mode;
  b.hd_thresholds = resolved_hd_thresholds();
  b.oma_threshold = oma_threshold;
  return b;
}

namespace {

const std::vector<std::string> kSystemKeys{
    "num_users", "tx_antennas", "rx_antennas", "m_sr",         "m_ru",       "m_li",
    "path_loss_exponent", "d_sr", "d_ru",      "li_quality",   "li_scale",   "power_coeffs",
    "thresholds", "kappa_sr",   "kappa_ru",    "cee_var_sr",   "cee_var_ru", "ipsic_var",
    "snr_db"};

const std::set<std::string> kKeys{
    "num_users",  "tx_antennas", "rx_antennas", "m_sr",         "m_ru",          "m_li",
    "path_loss_exponent", "d_sr", "d_ru",       "li_quality",   "li_scale",      "power_coeffs",
    "thresholds", "kappa_sr",    "kappa_ru",    "cee_var_sr",   "cee_var_ru",    "ipsic_var",
    "snr_db",     "hd_thresholds", "hd_threshold_rule", "oma_threshold"};

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer() && !(j.is_number_float() && j.get<double>() == static_cast<int>(j.get<double>())))
    throw ConfigError("'" + key + "' must be an integer");
  return static_cast<int>(j.get<double>());
}

std::vector<double> get_reals(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(get_real(e, key));
  return out;
}

template <class T, class Get>
std::vector<T> per_user(const json& j, const std::string& key, std::size_t n, Get get) {
  if (j.is_array()) {
    std::vector<T> out;
    for (const auto& e : j) out.push_back(get(e, key));
    return out;
  }
  return std::vector<T>(n, get(j, key));
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kKeys.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");

  std::string missing;
  for (const auto& key : kSystemKeys)
    if (!j.contains(key)) missing += (missing.empty() ? "" : ", ") + key;
  if (!missing.empty()) throw ConfigError("config is missing required keys: " + missing);

  RunConfig rc;
  SystemConfig& c = rc.system;
  c.num_users = get_int(j["num_users"], "num_users");
  if (c.num_users < 1) throw ConfigError("num_users must be a positive integer");
  const auto L = static_cast<std::size_t>(c.num_users);

  c.tx_antennas = get_int(j["tx_antennas"], "tx_antennas");
  c.rx_antennas = get_int(j["rx_antennas"], "rx_antennas");
  c.m_sr = get_int(j["m_sr"], "m_sr");
  c.m_li = get_int(j["m_li"], "m_li");
  c.m_ru = per_user<int>(j["m_ru"], "m_ru", L, get_int);
  c.path_loss_exponent = get_real(j["path_loss_exponent"], "path_loss_exponent");
  c.d_sr = get_real(j["d_sr"], "d_sr");
  c.d_ru = per_user<double>(j["d_ru"], "d_ru", L, get_real);
  c.li_quality = get_real(j["li_quality"], "li_quality");
  c.li_scale = get_real(j["li_scale"], "li_scale");
  c.power_coeffs = get_reals(j["power_coeffs"], "power_coeffs");
  c.thresholds = get_reals(j["thresholds"], "thresholds");
  c.kappa_sr = get_real(j["kappa_sr"], "kappa_sr");
  c.kappa_ru = get_real(j["kappa_ru"], "kappa_ru");
  c.cee_var_sr = get_real(j["cee_var_sr"], "cee_var_sr");
  c.cee_var_ru = per_user<double>(j["cee_var_ru"], "cee_var_ru", L, get_real);
  c.ipsic_var = get_real(j["ipsic_var"], "ipsic_var");
  c.snr_db = get_real(j["snr_db"], "snr_db");

  if (j.contains("hd_thresholds")) rc.hd_thresholds = get_reals(j["hd_thresholds"], "hd_thresholds");
  if (j.contains("hd_threshold_rule")) {
    const auto& r = j["hd_threshold_rule"];
    if (r == "equal")
      rc.hd_rule = HdThresholdRule::equal;
    else if (r == "rate_halving")
      rc.hd_rule = HdThresholdRule::rate_halving;
    else
      throw ConfigError("hd_threshold_rule must be \"equal\" or \"rate_halving\"");
  }
  if (j.contains("oma_threshold")) rc.oma_threshold = get_real(j["oma_threshold"], "oma_threshold");
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string canonical_json(const RunConfig& rc) {
  const SystemConfig& c = rc.system;
  json j;
  j["num_users"] = c.num_users;
  j["tx_antennas"] = c.tx_antennas;
  j["rx_antennas"] = c.rx_antennas;
  j["m_sr"] = c.m_sr;
  j["m_ru"] = c.m_ru;
  j["m_li"] = c.m_li;
  j["path_loss_exponent"] = c.path_loss_exponent;
  j["d_sr"] = c.d_sr;
  j["d_ru"] = c.d_ru;
  j["li_quality"] = c.li_quality;
  j["li_scale"] = c.li_scale;
  j["power_coeffs"] = c.power_coeffs;
  j["thresholds"] = c.thresholds;
  j["kappa_sr"] = c.kappa_sr;
  j["kappa_ru"] = c.kappa_ru;
  j["cee_var_sr"] = c.cee_var_sr;
  j["cee_var_ru"] = c.cee_var_ru;
  j["ipsic_var"] = c.ipsic_var;
  j["snr_db"] = c.snr_db;
  j["hd_thresholds"] = rc.resolved_hd_thresholds();
  if (rc.oma_threshold)
    j["oma_threshold"] = *rc.oma_threshold;
  else
    j["oma_threshold"] = oma_threshold_for(c.thresholds);
  return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical_json(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace nomafd
