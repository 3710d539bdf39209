#include "ehaoi/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ehaoi {

using json = nlohmann::ordered_json;

std::vector<TrafficConfig> Scenario::traffic() const {
  std::vector<TrafficConfig> out;
  for (PolicyKind p : policies) out.push_back({p, arrival_rate, sampling_rate});
  return out;
}

void Scenario::validate() const {
  if (schema_version != kScenarioSchemaVersion)
    throw ScenarioError("schema_version " + std::to_string(schema_version) +
                        " is not supported (expected " +
                        std::to_string(kScenarioSchemaVersion) + ")");
  network.validate();
  TrafficConfig{PolicyKind::FCFS, arrival_rate, sampling_rate}.validate();
  if (policies.empty()) throw ScenarioError("traffic.policy: at least one policy is required");
  if (sim.slots < 10'000) throw ScenarioError("sim.slots must be >= 10000");
  if (sim.replications < 1) throw ScenarioError("sim.replications must be >= 1");
}

Scenario default_scenario() { return Scenario{}; }

std::vector<PolicyKind> parse_policy_set(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "all") return {PolicyKind::FCFS, PolicyKind::QR, PolicyKind::GW};
  std::vector<PolicyKind> out;
  std::stringstream ss(lower);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const PolicyKind p = aoi::parse_policy(item);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.empty()) throw std::invalid_argument("empty policy list");
  return out;
}

namespace {

class Section {
 public:
  Section(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
    if (!obj_.is_object()) throw ScenarioError(name_ + ": expected an object");
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = get(key)) {
      if (!v->is_number()) throw ScenarioError(path(key) + ": expected a number");
      out = v->get<double>();
    }
  }

  void count(const std::string& key, std::uint64_t& out) {
    if (const json* v = get(key)) {
      if (!v->is_number_unsigned()) throw ScenarioError(path(key) + ": expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) throw ScenarioError("unknown key '" + path(it.key()) + "'");
  }

  std::string path(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

 private:
  const json& obj_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_network(const json& j, NetworkConfig& n) {
  Section s(j, "network");
  s.number("coverage_radius", n.region.coverage_radius);
  s.number("pr_distance", n.region.pr_offset);
  s.number("sr_distance", n.sr_distance);
  s.number("st_density", n.st_density);
  s.number("eh_radius", n.region.eh_radius);
  s.number("gz_radius", n.region.gz_radius);
  s.number("primary_power", n.radio.primary_power);
  s.number("secondary_power", n.radio.secondary_power);
  s.number("pathloss_exponent", n.radio.pathloss_exponent);
  s.number("noise_power", n.radio.noise_power);
  s.number("access_probability", n.access_probability);
  const json* lin = s.get("sinr_threshold");
  const json* db = s.get("sinr_threshold_db");
  if (lin && db)
    throw ScenarioError("network: give either sinr_threshold or sinr_threshold_db, not both");
  if (lin) s.number("sinr_threshold", n.radio.sinr_threshold);
  if (db) {
    if (!db->is_number()) throw ScenarioError("network.sinr_threshold_db: expected a number");
    n.radio.sinr_threshold = channel::db_to_linear(db->get<double>());
  }
  s.reject_unknown();
}

void read_traffic(const json& j, Scenario& sc) {
  Section s(j, "traffic");
  if (const json* p = s.get("policy")) {
    try {
      if (p->is_string()) {
        sc.policies = parse_policy_set(p->get<std::string>());
      } else if (p->is_array()) {
        sc.policies.clear();
        for (const auto& item : *p) {
          if (!item.is_string()) throw ScenarioError("traffic.policy: expected policy names");
          const PolicyKind k = aoi::parse_policy(item.get<std::string>());
          if (std::find(sc.policies.begin(), sc.policies.end(), k) == sc.policies.end())
            sc.policies.push_back(k);
        }
      } else {
        throw ScenarioError("traffic.policy: expected a string or an array");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("traffic.policy: ") + e.what());
    }
  }
  s.number("arrival_rate", sc.arrival_rate);
  if (const json* q = s.get("sampling_rate")) {
    if (!q->is_number()) throw ScenarioError("traffic.sampling_rate: expected a number");
    sc.sampling_rate = q->get<double>();
  }
  s.reject_unknown();
}

void read_sim(const json& j, SimSettings& sim) {
  Section s(j, "sim");
  s.count("slots", sim.slots);
  s.count("replications", sim.replications);
  s.count("seed", sim.seed);
  if (const json* h = s.get("harvest")) {
    if (!h->is_string()) throw ScenarioError("sim.harvest: expected a string");
    const auto v = h->get<std::string>();
    if (v == "always")
      sim.harvest = HarvestMode::always;
    else if (v == "busy_only")
      sim.harvest = HarvestMode::busy_only;
    else
      throw ScenarioError("sim.harvest: expected 'always' or 'busy_only'");
  }
  s.reject_unknown();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario sc = default_scenario();
  Section top(root, "");
  const json* version = top.get("schema_version");
  if (!version) throw ScenarioError("missing required key 'schema_version'");
  if (!version->is_number_integer()) throw ScenarioError("schema_version: expected an integer");
  sc.schema_version = version->get<int>();
  if (const json* n = top.get("network")) read_network(*n, sc.network);
  if (const json* t = top.get("traffic")) read_traffic(*t, sc);
  if (const json* s = top.get("sim")) read_sim(*s, sc.sim);
  top.reject_unknown();
  try {
    sc.validate();
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  const auto& n = sc.network;
  json root;
  root["schema_version"] = sc.schema_version;
  root["network"] = {
      {"coverage_radius", n.region.coverage_radius},
      {"pr_distance", n.region.pr_offset},
      {"sr_distance", n.sr_distance},
      {"st_density", n.st_density},
      {"eh_radius", n.region.eh_radius},
      {"gz_radius", n.region.gz_radius},
      {"primary_power", n.radio.primary_power},
      {"secondary_power", n.radio.secondary_power},
      {"pathloss_exponent", n.radio.pathloss_exponent},
      {"noise_power", n.radio.noise_power},
      {"sinr_threshold", n.radio.sinr_threshold},
      {"access_probability", n.access_probability},
  };
  json policies = json::array();
  for (PolicyKind p : sc.policies) policies.push_back(std::string(aoi::to_string(p)));
  root["traffic"] = {{"policy", policies}, {"arrival_rate", sc.arrival_rate}};
  if (sc.sampling_rate) root["traffic"]["sampling_rate"] = *sc.sampling_rate;
  root["sim"] = {
      {"slots", sc.sim.slots},
      {"replications", sc.sim.replications},
      {"seed", sc.sim.seed},
      {"harvest", sc.sim.harvest == HarvestMode::always ? "always" : "busy_only"},
  };
  return root.dump(2) + "\n";
}

}  // namespace ehaoi
