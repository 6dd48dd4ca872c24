#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "detcount/count.hpp"

namespace pfc {

enum class Task { Atlas, Count, Oracle, Bench, Certify };
std::string task_name(Task t);

struct ProblemSpec {
  Task task = Task::Count;
  std::string fn;
  int dim = 1;
  Box domain;                  // defaults to the unit box of dim
  int r = 4;
  Rational eps = Rational(1, 1024);
  uint64_t H = 16;
  std::vector<uint64_t> H_list;
  int g = 1;
  CountMethod method = CountMethod::Determinant;
  long precision = 4096;       // bits, cap for exact-value decisions
  uint64_t seed = 0;
  size_t samples = 10000;
  unsigned threads = 1;
  std::string out;             // empty: stdout
  std::string format;          // json | csv; empty: the task's default
  std::string atlas_path;      // certify input

  bool operator==(const ProblemSpec& o) const;
  std::string output_format() const;
};

// args exclude the program name; args[0] is the subcommand.
ProblemSpec parse_spec(const std::vector<std::string>& args);
// Same flags as text: whitespace separated, '#' starts a comment.
ProblemSpec parse_spec_text(std::string_view text);
std::vector<std::string> emit_spec(const ProblemSpec& spec);
std::string emit_spec_text(const ProblemSpec& spec);

}  // namespace pfc
