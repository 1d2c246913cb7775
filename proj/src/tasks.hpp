#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "environment.hpp"

namespace inash {

struct TimedPath;

/// Label sets over a robot's propositions, as a bitmask.
using Label = std::uint8_t;
inline constexpr Label kFree = 1;  // p_F
inline constexpr Label kGoal = 2;  // p_G for the labelled robot

std::string label_name(Label l);

/// Label sets w_0, w_1, ... with the instants at which each begins.
/// times[0] == 0, times strictly increasing, consecutive labels differ.
struct Word
{
  std::vector<Label> labels;
  std::vector<double> times;
};

/// Deterministic finite-word automaton over 2^Pi. A transition fires when the
/// input contains every bit of `require` and none of `forbid`; an input
/// matching no transition sends the run to an implicit rejecting sink.
class Automaton
{
public:
  struct Transition
  {
    int from;
    Label require;
    Label forbid;
    int to;
  };

  Automaton(int states, int initial, std::vector<int> accepting, std::vector<Transition> transitions);

  /// Next state, or -1 for the sink.
  int step(int state, Label input) const;
  int initial() const { return initial_; }
  bool is_accepting(int state) const;
  bool accepts(const Word& w) const;

private:
  int states_;
  int initial_;
  std::vector<int> accepting_;
  std::vector<Transition> transitions_;
};

/// F p_G and G p_F: q0 -(p_F & !p_G)-> q0, q0 -(p_F & p_G)-> q1, q1 -(p_F)-> q1.
const Automaton& reach_avoid_automaton();

Label label(const RobotSpec& r, const Workspace& w, Point2 p);

/// Exact label-change instants along a piecewise-linear timed path. Labels are
/// taken as right limits (the label holding just after each instant); the
/// parked tail carries the label of the final vertex.
Word word_of_path(const TimedPath& path, const RobotSpec& r, const Workspace& w);

bool accepts(const Automaton& a, const Word& w);

} // namespace inash
