#include "labelprop/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace labelprop {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_weight(const std::string& tok, const std::string& path, std::size_t line_no) {
    std::size_t used = 0;
    double w = 0;
    try {
        w = std::stod(tok, &used);
    } catch (const std::exception&) {
        fail(path, line_no, "malformed weight '" + tok + "'");
    }
    if (used != tok.size()) fail(path, line_no, "malformed weight '" + tok + "'");
    return w;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

// Reads "key<TAB or space>value" label files as (name, token) pairs.
std::vector<std::pair<std::string, std::string>> read_label_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) fail(path, line_no, "expected 'node label'");
        out.emplace_back(toks[0], toks[1]);
    }
    return out;
}

} // namespace

std::vector<std::string> default_names(node_id n) {
    std::vector<std::string> names(n);
    for (node_id i = 0; i < n; ++i) names[i] = std::to_string(i);
    return names;
}

NamedGraph read_edge_list(const std::string& path) {
    auto in = open_input(path);
    std::unordered_map<std::string, node_id> index;
    std::vector<std::string> names;
    auto intern = [&](const std::string& name) {
        const auto [it, inserted] = index.try_emplace(name, static_cast<node_id>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    };

    std::vector<EdgeInput> edges;
    bool directed = false, signed_values = false;
    std::string types_path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0][0] == '%') {
            if (toks[0] == "%directed" && toks.size() == 1)
                directed = true;
            else if (toks[0] == "%signed" && toks.size() == 1)
                signed_values = true;
            else if (toks[0] == "%types" && toks.size() == 2)
                types_path = toks[1];
            else
                fail(path, line_no, "unknown or malformed directive '" + toks[0] + "'");
            continue;
        }
        if (toks.size() == 1) {
            intern(toks[0]);
            continue;
        }
        if (toks.size() > 3) fail(path, line_no, "expected 'u v [w]'");
        const node_id u = intern(toks[0]);
        const node_id v = intern(toks[1]);
        const double w = toks.size() == 3 ? parse_weight(toks[2], path, line_no) : 1.0;
        if (w < 0 && !signed_values)
            fail(path, line_no, "negative weight without a %signed directive");
        edges.push_back({u, v, w});
    }

    BuildOptions opt;
    opt.directed = directed;
    opt.signed_values = signed_values;
    if (!types_path.empty()) {
        const auto resolved =
            (std::filesystem::path(path).parent_path() / types_path).string();
        opt.node_types.assign(names.size(), -1);
        for (const auto& [name, tok] : read_label_file(resolved)) {
            const auto it = index.find(name);
            node_id id;
            if (it == index.end()) {
                id = intern(name);
                opt.node_types.push_back(-1);
            } else {
                id = it->second;
            }
            try {
                opt.node_types[id] = std::stoi(tok);
            } catch (const std::exception&) {
                throw DataError(resolved + ": malformed type '" + tok + "'");
            }
        }
        for (node_id i = 0; i < names.size(); ++i)
            if (opt.node_types[i] == -1)
                throw DataError(resolved + ": node '" + names[i] + "' has no type");
    }
    if (names.empty()) throw DataError(path + ": no nodes");
    opt.node_count = static_cast<node_id>(names.size());
    return {build_graph(edges, opt), std::move(names)};
}

void write_edge_list(const NamedGraph& g, const std::string& path) {
    if (g.names.size() != g.graph.node_count())
        throw UsageError("name vector size does not match node count");
    auto out = open_output(path);
    if (g.graph.directed()) out << "%directed\n";
    if (g.graph.signed_values()) out << "%signed\n";
    if (g.graph.has_types()) {
        const auto types_file = std::filesystem::path(path).filename().string() + ".types";
        out << "%types " << types_file << "\n";
        auto tout = open_output(
            (std::filesystem::path(path).parent_path() / types_file).string());
        for (node_id i = 0; i < g.graph.node_count(); ++i)
            tout << g.names[i] << "\t" << g.graph.type(i) << "\n";
    }
    // Declaring every node up front pins the name-to-index mapping, so a
    // parse of this file reproduces the graph index-exactly.
    for (node_id i = 0; i < g.graph.node_count(); ++i) out << g.names[i] << "\n";
    g.graph.for_each_entry([&](node_id u, node_id v, double w) {
        out << g.names[u] << "\t" << g.names[v] << "\t" << fmt(w) << "\n";
    });
}

void write_partition(const Partition& p, const std::vector<std::string>& names,
                     const std::string& path) {
    if (names.size() != p.node_count())
        throw UsageError("name vector size does not match partition");
    auto out = open_output(path);
    const auto canon = p.canonical();
    for (node_id i = 0; i < canon.node_count(); ++i)
        out << names[i] << "\t" << canon.label(i) << "\n";
}

Partition read_partition(const std::string& path, const std::vector<std::string>& names) {
    std::unordered_map<std::string, node_id> index;
    for (node_id i = 0; i < names.size(); ++i) index[names[i]] = i;

    std::vector<label_id> labels(names.size());
    std::vector<char> seen(names.size(), 0);
    std::unordered_map<std::string, label_id> label_ids;
    for (const auto& [name, tok] : read_label_file(path)) {
        const auto it = index.find(name);
        if (it == index.end()) throw DataError(path + ": unknown node '" + name + "'");
        if (seen[it->second]) throw DataError(path + ": duplicate node '" + name + "'");
        seen[it->second] = 1;
        const auto lab =
            label_ids.try_emplace(tok, static_cast<label_id>(label_ids.size())).first;
        labels[it->second] = lab->second;
    }
    for (node_id i = 0; i < names.size(); ++i)
        if (!seen[i]) throw DataError(path + ": node '" + names[i] + "' missing");
    return Partition(std::move(labels));
}

double nmi_between_files(const std::string& path_a, const std::string& path_b) {
    const auto a = read_label_file(path_a);
    const auto b = read_label_file(path_b);
    std::map<std::string, std::string> by_name_a, by_name_b;
    for (const auto& [name, tok] : a)
        if (!by_name_a.emplace(name, tok).second)
            throw DataError(path_a + ": duplicate node '" + name + "'");
    for (const auto& [name, tok] : b)
        if (!by_name_b.emplace(name, tok).second)
            throw DataError(path_b + ": duplicate node '" + name + "'");
    if (by_name_a.size() != by_name_b.size())
        throw DataError("label files cover different node sets");

    std::vector<label_id> la, lb;
    std::unordered_map<std::string, label_id> ids_a, ids_b;
    for (const auto& [name, tok] : by_name_a) {
        const auto other = by_name_b.find(name);
        if (other == by_name_b.end())
            throw DataError(path_b + ": node '" + name + "' missing");
        la.push_back(ids_a.try_emplace(tok, static_cast<label_id>(ids_a.size())).first->second);
        lb.push_back(ids_b.try_emplace(other->second, static_cast<label_id>(ids_b.size()))
                         .first->second);
    }
    return nmi(Partition(std::move(la)), Partition(std::move(lb)));
}

void write_cover(const Cover& c, const std::vector<std::string>& names,
                 const std::string& path) {
    if (names.size() != c.node_count())
        throw UsageError("name vector size does not match cover");
    auto out = open_output(path);
    for (node_id i = 0; i < c.node_count(); ++i) {
        out << names[i] << "\t";
        const auto aff = c.affiliations(i);
        for (std::size_t k = 0; k < aff.size(); ++k) {
            if (k) out << ",";
            out << aff[k].first << ":" << fmt(aff[k].second);
        }
        out << "\n";
    }
}

Cover read_cover(const std::string& path, const std::vector<std::string>& names) {
    std::unordered_map<std::string, node_id> index;
    for (node_id i = 0; i < names.size(); ++i) index[names[i]] = i;

    std::vector<std::vector<Cover::Entry>> aff(names.size());
    std::vector<char> seen(names.size(), 0);
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) fail(path, line_no, "expected 'node label:weight,...'");
        const auto it = index.find(toks[0]);
        if (it == index.end()) fail(path, line_no, "unknown node '" + toks[0] + "'");
        if (seen[it->second]) fail(path, line_no, "duplicate node '" + toks[0] + "'");
        seen[it->second] = 1;

        std::stringstream ss(toks[1]);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) fail(path, line_no, "expected label:weight");
            label_id label = 0;
            try {
                label = static_cast<label_id>(std::stoul(item.substr(0, colon)));
            } catch (const std::exception&) {
                fail(path, line_no, "malformed label '" + item + "'");
            }
            aff[it->second].push_back(
                {label, parse_weight(item.substr(colon + 1), path, line_no)});
        }
    }
    for (node_id i = 0; i < names.size(); ++i)
        if (!seen[i]) throw DataError(path + ": node '" + names[i] + "' missing");
    return Cover(std::move(aff));
}

void write_hierarchy(const Hierarchy& h, const std::vector<std::string>& names,
                     const std::string& prefix) {
    auto index = open_output(prefix + ".index.tsv");
    index << "level\tfile\tgroups\n";
    for (std::size_t t = 0; t < h.lifted.size(); ++t) {
        const std::string file = prefix + ".level" + std::to_string(t) + ".tsv";
        write_partition(h.lifted[t], names, file);
        index << t << "\t" << std::filesystem::path(file).filename().string() << "\t"
              << h.lifted[t].group_count() << "\n";
    }
}

void write_run_report(const RunResult& r, const ObjectiveReport& obj,
                      const std::string& path) {
    auto out = open_output(path);
    out << "seed\t" << r.seed << "\n";
    out << "iterations\t" << r.iterations << "\n";
    out << "converged\t" << (r.converged ? "true" : "false") << "\n";
    out << "relabel_counts\t";
    for (std::size_t k = 0; k < r.relabel_counts.size(); ++k) {
        if (k) out << ",";
        out << r.relabel_counts[k];
    }
    out << "\n";
    out << "groups\t" << obj.groups << "\n";
    out << "objective_f\t" << fmt(obj.f) << "\n";
    out << "hamiltonian\t" << fmt(obj.hamiltonian_plain) << "\n";
    out << "modularity_q\t" << fmt(obj.modularity) << "\n";
    out << "cut_weight\t" << fmt(obj.cut) << "\n";
}

} // namespace labelprop
