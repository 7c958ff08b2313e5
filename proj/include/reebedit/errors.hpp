#pragma once
// Error types shared across the library.

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reebedit {

// An edit operation was asked to fire on a graph that does not satisfy the
// operation's side conditions.  `rule` is a short machine-friendly tag.
class precondition_error : public std::runtime_error {
 public:
  precondition_error(std::string rule, std::string details)
      : std::runtime_error("precondition violated [" + rule + "]: " + details),
        rule_(std::move(rule)),
        details_(std::move(details)) {}
  const std::string& rule() const { return rule_; }
  const std::string& details() const { return details_; }

 private:
  std::string rule_;
  std::string details_;
};

class unknown_vertex_error : public std::runtime_error {
 public:
  explicit unknown_vertex_error(const std::string& id)
      : std::runtime_error("unknown vertex id: \"" + id + "\"") {}
};

class label_collision_error : public std::runtime_error {
 public:
  explicit label_collision_error(const std::string& what)
      : std::runtime_error("label collision: " + what) {}
};

class genus_mismatch_error : public std::runtime_error {
 public:
  genus_mismatch_error(int g1, int g2)
      : std::runtime_error("genus mismatch " + std::to_string(g1) + " vs " + std::to_string(g2)),
        g1_(g1),
        g2_(g2) {}
  int g1() const { return g1_; }
  int g2() const { return g2_; }

 private:
  int g1_, g2_;
};

// Malformed wire input (bad JSON shape, bad literals, duplicate ids, ...).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error("parse error: " + what) {}
};

// Replay failed at a specific position of a deformation sequence.
class replay_error : public std::runtime_error {
 public:
  replay_error(std::size_t index, const std::string& what)
      : std::runtime_error("op #" + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A guaranteed internal invariant failed; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error("internal error: " + what) {}
};

}  // namespace reebedit
