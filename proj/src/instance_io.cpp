#include "iwalk/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace iwalk {

using nlohmann::json;

namespace {

constexpr const char* kInstanceFormat = "iwalk-instance";

template <typename T>
T get_field(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

InstanceFile instance_from_json(const json& doc) {
    if (!doc.is_object())
        throw FormatError("instance document must be a JSON object");
    if (doc.contains("format") && doc.at("format") != kInstanceFormat)
        throw FormatError("unexpected format tag " + doc.at("format").dump());
    InstanceFile inst;
    inst.states = get_field<std::vector<std::string>>(doc, "states");
    inst.lower = get_field<std::vector<std::vector<double>>>(doc, "lower");
    inst.upper = get_field<std::vector<std::vector<double>>>(doc, "upper");
    inst.marginal = get_field<std::vector<double>>(doc, "marginal");
    inst.q = get_field<std::vector<double>>(doc, "q");
    inst.f = get_field<std::vector<double>>(doc, "f");
    inst.steps = get_field<std::size_t>(doc, "steps");

    const std::size_t s = inst.states.size();
    auto check_len = [&](const std::vector<double>& v, const char* name) {
        if (v.size() != s)
            throw FormatError(std::string("'") + name + "' has " + std::to_string(v.size()) + " entries, expected " +
                              std::to_string(s));
    };
    check_len(inst.marginal, "marginal");
    check_len(inst.q, "q");
    check_len(inst.f, "f");
    for (const auto* m : {&inst.lower, &inst.upper}) {
        if (m->size() != s)
            throw FormatError("bound matrices must have one row per state");
        for (const auto& row : *m)
            if (row.size() != s)
                throw FormatError("bound matrix rows must have one entry per state");
    }
    return inst;
}

json to_json(const InstanceFile& inst) {
    return json{{"format", kInstanceFormat}, {"version", 1},          {"states", inst.states},
                {"lower", inst.lower},       {"upper", inst.upper},   {"marginal", inst.marginal},
                {"q", inst.q},               {"f", inst.f},           {"steps", inst.steps}};
}

InstanceFile parse_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

InstanceFile read_instance(const std::filesystem::path& path) { return parse_instance(read_text(path)); }

std::string serialize_instance(const InstanceFile& inst) { return to_json(inst).dump(2) + "\n"; }

void write_instance(const std::filesystem::path& path, const InstanceFile& inst) {
    write_json(path, to_json(inst));
}

void write_json(const std::filesystem::path& path, const json& doc) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << doc.dump(2) << "\n";
}

IntervalBounds bounds_of(const InstanceFile& inst) {
    return IntervalBounds::create(StateSpace(inst.states), inst.lower, inst.upper, inst.marginal);
}

OptimizationProblem problem_of(const InstanceFile& inst, Sense sense) {
    OptimizationProblem p;
    p.bounds = bounds_of(inst);
    p.q = MassFunction{inst.q};
    p.f = Gamble{inst.f};
    p.steps = inst.steps;
    p.sense = sense;
    return p;
}

InstanceFile instance_of(const GeneratedInstance& gen, std::size_t steps) {
    InstanceFile inst;
    inst.states = gen.bounds.states().labels();
    inst.lower = gen.bounds.lower_matrix().to_rows();
    inst.upper = gen.bounds.upper_matrix().to_rows();
    inst.marginal = gen.bounds.marginals();
    inst.q = gen.q.values;
    inst.f = gen.f.values;
    inst.steps = steps;
    return inst;
}

void check_config(const ExperimentConfig& c) {
    if (c.vertices.empty() || c.steps.empty())
        throw std::invalid_argument("experiment grid needs at least one vertex count and one step count");
    for (auto v : c.vertices)
        if (v < 2)
            throw std::invalid_argument("vertex counts must be at least 2");
    for (auto n : c.steps)
        if (n < 1)
            throw std::invalid_argument("step counts must be at least 1");
    if (c.instances < 1 || c.starts < 1 || c.threads < 1)
        throw std::invalid_argument("instances, starts and threads must be at least 1");
    if (c.strategies.empty())
        throw std::invalid_argument("at least one sweep strategy is required");
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig base) {
    if (!doc.is_object())
        throw FormatError("config document must be a JSON object");
    ExperimentConfig c = std::move(base);
    try {
        if (doc.contains("vertices"))
            c.vertices = doc.at("vertices").get<std::vector<std::size_t>>();
        if (doc.contains("steps"))
            c.steps = doc.at("steps").get<std::vector<std::size_t>>();
        if (doc.contains("instances"))
            c.instances = doc.at("instances").get<std::size_t>();
        if (doc.contains("starts"))
            c.starts = doc.at("starts").get<std::size_t>();
        if (doc.contains("seed"))
            c.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("strategies")) {
            c.strategies.clear();
            for (const auto& s : doc.at("strategies"))
                c.strategies.push_back(parse_sweep_order(s.get<std::string>()));
        }
        if (doc.contains("sense"))
            c.sense = parse_sense(doc.at("sense").get<std::string>());
        if (doc.contains("output_dir"))
            c.output_dir = doc.at("output_dir").get<std::string>();
        if (doc.contains("threads"))
            c.threads = doc.at("threads").get<std::size_t>();
        if (doc.contains("generator")) {
            const auto& g = doc.at("generator");
            c.gen.disconnect_fraction = g.value("disconnect_fraction", c.gen.disconnect_fraction);
            c.gen.lower_mean = g.value("lower_mean", c.gen.lower_mean);
            c.gen.width_mean = g.value("width_mean", c.gen.width_mean);
            c.gen.qf_mean = g.value("qf_mean", c.gen.qf_mean);
            c.gen.marginal_slack = g.value("marginal_slack", c.gen.marginal_slack);
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad config: ") + e.what());
    }
    return c;
}

json to_json(const ExperimentConfig& c) {
    json strategies = json::array();
    for (auto s : c.strategies)
        strategies.push_back(to_string(s));
    return json{{"vertices", c.vertices},
                {"steps", c.steps},
                {"instances", c.instances},
                {"starts", c.starts},
                {"seed", c.seed},
                {"strategies", strategies},
                {"sense", to_string(c.sense)},
                {"output_dir", c.output_dir},
                {"threads", c.threads},
                {"generator",
                 {{"disconnect_fraction", c.gen.disconnect_fraction},
                  {"lower_mean", c.gen.lower_mean},
                  {"width_mean", c.gen.width_mean},
                  {"qf_mean", c.gen.qf_mean},
                  {"marginal_slack", c.gen.marginal_slack}}}};
}

ExperimentConfig read_config(const std::filesystem::path& path, ExperimentConfig base) {
    return config_from_json(parse_json(read_text(path)), std::move(base));
}

} // namespace iwalk
