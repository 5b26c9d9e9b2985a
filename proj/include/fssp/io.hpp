#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "fssp/automaton.hpp"
#include "fssp/engine.hpp"
#include "fssp/families.hpp"

namespace fssp {

// Configuration text, "fssp-config v1": descriptor (or "custom"), general, cells in (y, x) order.
std::string write_config(const Configuration& c);
Configuration read_config(const std::string& text);

// Automaton text, "fssp-automaton v1": model, state names, 16 general rows, firing set,
// explicit transitions (canonical order) and the default-to-Q fallback.
std::string write_automaton(const TableAutomaton& a);
std::shared_ptr<TableAutomaton> read_automaton(const std::string& text);

// Table of every transition a (possibly lazy) automaton takes on the given runs, with
// states renamed densely.  Replaying those runs with the table gives identical traces.
std::shared_ptr<TableAutomaton> record_table(const Automaton& a, const std::vector<const CellSet*>& runs,
                                             int horizon);

// Same as dump_trace, with a parser for round trips (state names).
std::string write_trace(const CellSet& c, const Automaton& a, const Trace& tr);
struct ParsedTrace {
  std::vector<Cell> cells;
  std::vector<std::vector<std::string>> rows;  // [t][cell] state names
};
ParsedTrace read_trace(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace fssp
