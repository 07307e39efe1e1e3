#ifndef PHASEKIT_IO_HPP
#define PHASEKIT_IO_HPP

#include <string>

#include "phasekit/bv.hpp"
#include "phasekit/gauge_fp.hpp"
#include "phasekit/graph.hpp"
#include "phasekit/lie.hpp"
#include "phasekit/stationary_phase.hpp"

namespace phasekit {

/// Version written to and required in every model file.
constexpr int kSchemaVersion = 1;

/// Model kinds, stored in the "kind" field of each file.
enum class ModelKind { Action, Gauge, BV, Lie, Graph };
const char* to_string(ModelKind k);

/// Reads the "kind" field of a model document (Schema on failure).
ModelKind model_kind(const std::string& json_text);

/// A BV model as stored on disk: the Darboux pairs and the action as a
/// polynomial in hbar.
struct BVFile {
  BVSpace bv;
  BVAction action;
};

// Every reader validates the document and throws Error(Schema, "<path>: ...")
// on violations; every writer emits canonical JSON (sorted keys, two-space
// indent, exact rationals as strings) that the matching reader accepts.

ActionModel read_action_model(const std::string& json_text);
std::string write_action_model(const ActionModel& m);

GaugeModel read_gauge_model(const std::string& json_text);
std::string write_gauge_model(const GaugeModel& m);

BVFile read_bv_model(const std::string& json_text);
std::string write_bv_model(const BVFile& m);

LieData read_lie_data(const std::string& json_text);
std::string write_lie_data(const LieData& m);

Graph read_graph(const std::string& json_text);
std::string write_graph(const Graph& g);

/// Equality up to the order of vertices, of half-edges inside a vertex, of
/// edges, of the two ends of an edge and of leaves.
bool graph_equal_unordered(const Graph& a, const Graph& b);

/// Whole-file read (Schema if unreadable).
std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace phasekit

#endif  // PHASEKIT_IO_HPP
