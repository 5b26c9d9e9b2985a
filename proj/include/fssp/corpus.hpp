#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fssp/covering.hpp"
#include "fssp/lower_bound.hpp"
#include "fssp/solutions.hpp"

namespace fssp {

enum class CorpusKind { Configuration, Automaton, Witness, Cover };
const char* corpus_kind_name(CorpusKind k);

struct CorpusEntry {
  std::string id;
  CorpusKind kind = CorpusKind::Configuration;
  std::string path;                             // relative to the corpus directory
  std::map<std::string, std::string> expected;  // e.g. ft=12, pieces=11
  std::string provenance;                       // where the expected values come from
};

struct Corpus {
  std::string dir;
  std::vector<CorpusEntry> entries;
  const CorpusEntry& entry(const std::string& id) const;  // throws Corpus
};

std::string default_corpus_dir();
Corpus load_corpus(const std::string& dir = default_corpus_dir());

// Typed loaders; each checks the artifact's own invariants.
Configuration load_configuration(const Corpus& c, const std::string& id);
std::shared_ptr<TableAutomaton> load_automaton(const Corpus& c, const std::string& id);
LowerBoundWitness load_witness(const Corpus& c, const std::string& id);
std::vector<CoverPiece> load_cover(const Corpus& c, const std::string& id);

// Text forms used by the corpus files.
std::string write_witness(const LowerBoundWitness& w, const VariationSpec& spec);
LowerBoundWitness read_witness(const std::string& text, VariationSpec* spec = nullptr);
std::string write_cover(const std::vector<CoverPiece>& pieces, int a, int b, int w, int h);
std::vector<CoverPiece> read_cover(const std::string& text);

struct PinResult {
  std::string id;
  bool ok = false;
  std::string diff;  // first divergence
};
// Recomputes the artifact from scratch and compares it with the stored one and the expected values.
PinResult pin(const Corpus& c, const CorpusEntry& e);
std::vector<PinResult> pin_all(const Corpus& c);

// Writes every canonical artifact and the index into dir.
void write_corpus(const std::string& dir);

}  // namespace fssp
