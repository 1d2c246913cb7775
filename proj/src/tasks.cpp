#include "tasks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trajectory.hpp"

namespace inash {

std::string label_name(Label l)
{
  std::string s = "{";
  if (l & kFree) s += "p_F";
  if (l & kGoal) s += (l & kFree) ? ",p_G" : "p_G";
  return s + "}";
}

Automaton::Automaton(int states, int initial, std::vector<int> accepting, std::vector<Transition> transitions)
    : states_(states), initial_(initial), accepting_(std::move(accepting)), transitions_(std::move(transitions))
{
  if (initial_ < 0 || initial_ >= states_) throw std::invalid_argument("automaton: bad initial state");
  for (const auto& t : transitions_) {
    if (t.from < 0 || t.from >= states_ || t.to < 0 || t.to >= states_)
      throw std::invalid_argument("automaton: transition state out of range");
    for (const auto& u : transitions_) {
      // Two guards overlap unless one requires a bit the other forbids.
      const bool disjoint = (t.require & u.forbid) || (u.require & t.forbid);
      if (&t != &u && t.from == u.from && !disjoint)
        throw std::invalid_argument("automaton: nondeterministic transitions");
    }
  }
}

int Automaton::step(int state, Label input) const
{
  if (state < 0) return -1;
  for (const auto& t : transitions_)
    if (t.from == state && (input & t.require) == t.require && (input & t.forbid) == 0) return t.to;
  return -1;
}

bool Automaton::is_accepting(int state) const
{
  return std::find(accepting_.begin(), accepting_.end(), state) != accepting_.end();
}

bool Automaton::accepts(const Word& w) const
{
  int q = initial_;
  for (Label l : w.labels) {
    q = step(q, l);
    if (q < 0) return false;
  }
  return is_accepting(q);
}

const Automaton& reach_avoid_automaton()
{
  static const Automaton a(2, 0, {1},
                           {{0, kFree, kGoal, 0},
                            {0, static_cast<Label>(kFree | kGoal), 0, 1},
                            {1, kFree, 0, 1}});
  return a;
}

Label label(const RobotSpec& r, const Workspace& w, Point2 p)
{
  Label l = 0;
  if (point_free(w, p, r.radius)) l |= kFree;
  if (in_goal(r, p)) l |= kGoal;
  return l;
}

bool accepts(const Automaton& a, const Word& w) { return a.accepts(w); }

namespace {

// Parameters s in (0,1) where a + s d meets the circle |p - c| = rho.
void circle_roots(Point2 a, Point2 d, Point2 c, double rho, std::vector<double>& out)
{
  if (rho <= 0.0) return;
  const Point2 f = a - c;
  const double qa = dot(d, d);
  if (qa == 0.0) return;
  const double qb = 2.0 * dot(f, d);
  const double qc = dot(f, f) - rho * rho;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  for (double s : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
    if (s > 0.0 && s < 1.0) out.push_back(s);
}

void line_roots(double a, double d, double value, std::vector<double>& out)
{
  if (d == 0.0) return;
  const double s = (value - a) / d;
  if (s > 0.0 && s < 1.0) out.push_back(s);
}

void rect_roots(Point2 a, Point2 d, const Rect& r, double grow, std::vector<double>& out)
{
  line_roots(a.x, d.x, r.min.x - grow, out);
  line_roots(a.x, d.x, r.max.x + grow, out);
  line_roots(a.y, d.y, r.min.y - grow, out);
  line_roots(a.y, d.y, r.max.y + grow, out);
}

} // namespace

Word word_of_path(const TimedPath& path, const RobotSpec& r, const Workspace& w)
{
  Word word;
  auto push = [&](Label l, double t) {
    if (!word.labels.empty() && word.labels.back() == l) return;
    word.labels.push_back(l);
    word.times.push_back(t);
  };
  if (path.vertices.empty()) return word;

  std::vector<double> cuts;
  for (std::size_t j = 0; j + 1 < path.vertices.size(); ++j) {
    const Point2 a = path.vertices[j];
    const Point2 b = path.vertices[j + 1];
    const double t0 = path.times[j];
    const double t1 = path.times[j + 1];
    if (!(t1 > t0)) continue;
    const Point2 d = b - a;

    cuts.assign({0.0, 1.0});
    const double shrink = r.goal_by_center ? 0.0 : r.radius;
    if (const auto* c = std::get_if<Circle>(&r.goal)) {
      circle_roots(a, d, c->center, c->radius - shrink, cuts);
    } else {
      rect_roots(a, d, std::get<Rect>(r.goal), -shrink, cuts);
    }
    rect_roots(a, d, w.bounds, -r.radius, cuts);
    for (const auto& o : w.obstacles) {
      if (const auto* c = std::get_if<Circle>(&o)) {
        circle_roots(a, d, c->center, c->radius + r.radius, cuts);
      } else {
        const auto& box = std::get<Rect>(o);
        rect_roots(a, d, box, r.radius, cuts);
        for (Point2 corner : {box.min, Point2{box.max.x, box.min.y}, box.max, Point2{box.min.x, box.max.y}})
          circle_roots(a, d, corner, r.radius, cuts);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
      const double s0 = cuts[m];
      const double s1 = cuts[m + 1];
      if (!(s1 > s0)) continue;
      const Label l = label(r, w, a + (0.5 * (s0 + s1)) * d);
      push(l, t0 + s0 * (t1 - t0));
    }
  }
  push(label(r, w, path.vertices.back()), path.duration());
  return word;
}

} // namespace inash
