#pragma once

#include <string>
#include <vector>

#include "labelprop/engine.hpp"
#include "labelprop/graph.hpp"
#include "labelprop/objectives.hpp"
#include "labelprop/partition.hpp"
#include "labelprop/pipelines.hpp"

namespace labelprop {

// Graph plus the original node names (files may use arbitrary string ids,
// which are remapped to dense indices in first-appearance order).
struct NamedGraph {
    Graph graph;
    std::vector<std::string> names;
};

std::vector<std::string> default_names(node_id n);

// Edge-list format, whitespace separated:
//   u v [w]     edge (weight defaults to 1; u == v is a loop)
//   u           isolated node declaration
//   # ...       comment
// Directives: %directed, %signed, %types <file> (file holds "node<TAB>type"
// lines; every node must be covered).
NamedGraph read_edge_list(const std::string& path);
void write_edge_list(const NamedGraph& g, const std::string& path);

// Partition file: "node<TAB>label" per line, full node coverage required.
void write_partition(const Partition& p, const std::vector<std::string>& names,
                     const std::string& path);
Partition read_partition(const std::string& path, const std::vector<std::string>& names);

// Label files compared by node name; the node sets must match exactly.
double nmi_between_files(const std::string& path_a, const std::string& path_b);

// Cover file: "node<TAB>label:weight[,label:weight...]".
void write_cover(const Cover& c, const std::vector<std::string>& names,
                 const std::string& path);
Cover read_cover(const std::string& path, const std::vector<std::string>& names);

// One lifted partition file per level plus an index listing them.
void write_hierarchy(const Hierarchy& h, const std::vector<std::string>& names,
                     const std::string& prefix);

void write_run_report(const RunResult& r, const ObjectiveReport& obj,
                      const std::string& path);

} // namespace labelprop
