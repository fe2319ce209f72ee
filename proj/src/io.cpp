#include "bnboot/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace bnboot {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("invalid JSON in '" + path + "': " + e.what());
    }
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

std::vector<Variable> variables_from_json(const json& j, const std::string& path) {
    std::vector<Variable> variables;
    if (!j.contains("variables") || !j["variables"].is_array())
        throw FormatError("'" + path + "': missing 'variables' array");
    for (const auto& vj : j["variables"]) {
        Variable v;
        v.name = vj.at("name").get<std::string>();
        for (const auto& s : vj.at("states")) v.states.push_back(s.get<std::string>());
        variables.push_back(std::move(v));
    }
    validate_domain(variables);
    return variables;
}

int variable_index(const std::vector<Variable>& variables, const std::string& name,
                   const std::string& path) {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    throw FormatError("'" + path + "': unknown variable '" + name + "'");
}

json variables_to_json(const std::vector<Variable>& variables) {
    json arr = json::array();
    for (const auto& v : variables)
        arr.push_back({{"name", v.name}, {"states", v.states}});
    return arr;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string format_confidence(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

}  // namespace

BayesianNetwork read_network(const std::string& path) {
    const json j = load_json(path);
    BayesianNetwork bn;
    bn.structure = Dag(variables_from_json(j, path));
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2)
                throw FormatError("'" + path + "': each edge must be [parent, child]");
            const int p = variable_index(bn.structure.variables, e[0], path);
            const int c = variable_index(bn.structure.variables, e[1], path);
            if (bn.structure.has_edge(p, c))
                throw FormatError("'" + path + "': duplicate edge");
            bn.structure.add_edge(p, c);
        }
    }
    try {
        bn.structure.validate();
    } catch (const UsageError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }

    if (!j.contains("cpts")) throw FormatError("'" + path + "': missing 'cpts'");
    bn.parameters.tables.resize(bn.structure.num_variables());
    for (int i = 0; i < bn.structure.num_variables(); ++i) {
        const std::string& name = bn.structure.variables[i].name;
        if (!j["cpts"].contains(name))
            throw FormatError("'" + path + "': missing cpt for '" + name + "'");
        for (const auto& row : j["cpts"][name]) {
            std::vector<double> dist;
            for (const auto& p : row) dist.push_back(p.get<double>());
            bn.parameters.tables[i].push_back(std::move(dist));
        }
    }
    try {
        bn.validate();
    } catch (const UsageError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
    return bn;
}

void write_network(const std::string& path, const BayesianNetwork& bn,
                   const double* score_metadata) {
    const Dag& dag = bn.structure;
    json j;
    j["variables"] = variables_to_json(dag.variables);
    json edges = json::array();
    for (int c = 0; c < dag.num_variables(); ++c)
        for (int p : dag.parents[c])
            edges.push_back({dag.variables[p].name, dag.variables[c].name});
    j["edges"] = edges;
    json cpts;
    for (int i = 0; i < dag.num_variables(); ++i)
        cpts[dag.variables[i].name] = bn.parameters.tables[i];
    j["cpts"] = cpts;
    if (score_metadata) j["metadata"] = {{"score", *score_metadata}};
    dump_json(path, j);
}

void write_pdag(const std::string& path, const Pdag& pdag) {
    json j;
    j["variables"] = variables_to_json(pdag.variables);
    json directed = json::array();
    for (const auto& [a, b] : pdag.directed_edges)
        directed.push_back({pdag.variables[a].name, pdag.variables[b].name});
    json undirected = json::array();
    for (const auto& [a, b] : pdag.undirected_edges)
        undirected.push_back({pdag.variables[a].name, pdag.variables[b].name});
    j["edges"] = directed;
    j["undirected_edges"] = undirected;
    dump_json(path, j);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw FormatError("'" + path + "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto names = split_csv_line(line);

    Dataset ds;
    // State inventories are collected from the data in first-appearance
    // order; files written by write_dataset round-trip when every state
    // occurs, which is the normal case for data this tooling produces.
    std::vector<std::map<std::string, int>> state_index(names.size());
    for (const auto& name : names) ds.variables.push_back({name, {}});

    int line_no = 1;
    std::vector<std::vector<std::string>> raw_rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != names.size())
            throw FormatError("'" + path + "' line " + std::to_string(line_no) +
                              ": expected " + std::to_string(names.size()) + " fields");
        raw_rows.push_back(std::move(fields));
    }
    for (const auto& fields : raw_rows) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            auto& idx = state_index[i];
            if (idx.emplace(fields[i], static_cast<int>(idx.size())).second)
                ds.variables[i].states.push_back(fields[i]);
        }
    }
    for (auto& v : ds.variables) {
        // arity >= 2 even if the data happens to be constant
        while (v.arity() < 2) v.states.push_back("_unseen" + std::to_string(v.arity()));
    }
    for (const auto& fields : raw_rows) {
        std::vector<int> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            row[i] = state_index[i].at(fields[i]);
        ds.rows.push_back(std::move(row));
    }
    try {
        validate_domain(ds.variables);
        ds.validate();
    } catch (const UsageError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
    return ds;
}

void write_dataset(const std::string& path, const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < dataset.variables.size(); ++i)
        out << (i ? "," : "") << dataset.variables[i].name;
    out << '\n';
    for (const auto& row : dataset.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << dataset.variables[i].states[row[i]];
        out << '\n';
    }
}

void write_report(const std::string& path, const ConfidenceReport& report) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << "method,kind,x,y,confidence\n";
    for (const Feature& f : feature_universe(report.variables, report.kinds)) {
        out << report.method << ',' << kind_name(f.kind) << ','
            << report.variables[f.x].name << ',' << report.variables[f.y].name << ','
            << format_confidence(report.confidence(f)) << '\n';
    }
}

ConfidenceReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line).size() != 5)
        throw FormatError("'" + path + "': bad report header");

    ConfidenceReport report;
    std::map<std::string, int> var_index;
    std::set<FeatureKind> kinds;
    struct Row {
        FeatureKind kind;
        std::string x, y;
        double conf;
    };
    std::vector<Row> parsed;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw FormatError("'" + path + "' line " + std::to_string(line_no) +
                              ": expected 5 fields");
        report.method = fields[0];
        Row row;
        row.kind = kind_from_name(fields[1]);
        row.x = fields[2];
        row.y = fields[3];
        try {
            row.conf = std::stod(fields[4]);
        } catch (const std::exception&) {
            throw FormatError("'" + path + "' line " + std::to_string(line_no) +
                              ": bad confidence value");
        }
        kinds.insert(row.kind);
        for (const auto& name : {row.x, row.y}) {
            if (var_index.emplace(name, static_cast<int>(var_index.size())).second)
                report.variables.push_back({name, {"0", "1"}});  // states unknown
        }
        parsed.push_back(std::move(row));
    }
    report.kinds.assign(kinds.begin(), kinds.end());
    for (const auto& row : parsed) {
        if (row.conf > 0.0) {
            const Feature f = Feature::make(row.kind, var_index.at(row.x),
                                            var_index.at(row.y));
            report.confidences[f] = row.conf;
        }
    }
    return report;
}

void write_constraints(const std::string& path, const DerivedConstraints& derived,
                       const std::vector<Variable>& variables) {
    json j;
    json orders = json::array();
    for (const auto& [x, y] : derived.constraints.required_orders)
        orders.push_back({variables[x].name, variables[y].name});
    json forbidden = json::array();
    for (const auto& [p, c] : derived.constraints.forbidden_parents)
        forbidden.push_back({variables[p].name, variables[c].name});
    json dropped = json::array();
    for (const auto& [x, y] : derived.dropped_orders)
        dropped.push_back({variables[x].name, variables[y].name});
    j["required_orders"] = orders;
    j["forbidden_parents"] = forbidden;
    j["dropped_orders"] = dropped;
    dump_json(path, j);
}

Constraints read_constraints(const std::string& path,
                             const std::vector<Variable>& variables) {
    const json j = load_json(path);
    Constraints out;
    auto index = [&](const json& name) {
        return variable_index(variables, name.get<std::string>(), path);
    };
    if (j.contains("required_orders"))
        for (const auto& pair : j["required_orders"])
            out.required_orders.insert({index(pair.at(0)), index(pair.at(1))});
    if (j.contains("forbidden_parents"))
        for (const auto& pair : j["forbidden_parents"])
            out.forbidden_parents.insert({index(pair.at(0)), index(pair.at(1))});
    return out;
}

void write_recovery_rows(const std::string& path, const std::vector<MetricRow>& rows) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << "size,threshold,kind,metric,mean,sd\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%s,%s,%.6f,%.6f", r.size, r.threshold,
                      r.group.c_str(), r.metric.c_str(), r.mean, r.sd);
        out << buf << '\n';
    }
}

void write_constraint_rows(const std::string& path, const std::vector<MetricRow>& rows) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << "size,arm,metric,mean,sd\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%s,%s,%.6f,%.6f", r.size, r.group.c_str(),
                      r.metric.c_str(), r.mean, r.sd);
        out << buf << '\n';
    }
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& config_json) {
    json j;
    j["command"] = command;
    j["tool_version"] = "0.1.0";
    try {
        j["config"] = json::parse(config_json);
    } catch (const json::parse_error&) {
        throw InternalError("manifest config is not valid JSON");
    }
    dump_json(path, j);
}

}  // namespace bnboot
