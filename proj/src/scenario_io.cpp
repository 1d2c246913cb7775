#include "scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace inash {

namespace {

void require_object(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
  if (!j.is_object()) throw ScenarioError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ScenarioError(where + ": unknown field '" + key + "'");
  }
}

double number(const json& j, const std::string& where)
{
  if (!j.is_number()) throw ScenarioError(where + ": expected a number");
  return j.get<double>();
}

Rect rect_from_json(const json& j, const std::string& where)
{
  if (!j.is_array() || j.size() != 2) throw ScenarioError(where + ": expected [[x0,y0],[x1,y1]]");
  return {point_from_json(j[0], where), point_from_json(j[1], where)};
}

} // namespace

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j, const std::string& where)
{
  if (!j.is_array() || j.size() != 2) throw ScenarioError(where + ": expected [x, y]");
  return {number(j[0], where), number(j[1], where)};
}

json shape_to_json(const Shape& s)
{
  if (const auto* c = std::get_if<Circle>(&s))
    return {{"circle", {{"c", point_to_json(c->center)}, {"r", c->radius}}}};
  const auto& r = std::get<Rect>(s);
  return {{"rect", json::array({point_to_json(r.min), point_to_json(r.max)})}};
}

Shape shape_from_json(const json& j, const std::string& where)
{
  require_object(j, where, {"rect", "circle"});
  if (j.size() != 1) throw ScenarioError(where + ": exactly one of 'rect' or 'circle' required");
  if (j.contains("rect")) return rect_from_json(j.at("rect"), where + ".rect");
  const json& c = j.at("circle");
  require_object(c, where + ".circle", {"c", "r"});
  if (!c.contains("c") || !c.contains("r")) throw ScenarioError(where + ".circle: needs 'c' and 'r'");
  return Circle{point_from_json(c.at("c"), where + ".circle.c"), number(c.at("r"), where + ".circle.r")};
}

json scenario_to_json(const Scenario& s)
{
  json obstacles = json::array();
  for (const auto& o : s.workspace.obstacles) obstacles.push_back(shape_to_json(o));
  json robots = json::array();
  for (const auto& r : s.robots)
    robots.push_back({{"id", r.id},
                      {"radius", r.radius},
                      {"init", point_to_json(r.init)},
                      {"goal", shape_to_json(r.goal)}});
  return {{"bounds", json::array({point_to_json(s.workspace.bounds.min), point_to_json(s.workspace.bounds.max)})},
          {"obstacles", obstacles},
          {"robots", robots},
          {"seed", s.seed}};
}

Scenario scenario_from_json(const json& j)
{
  require_object(j, "scenario", {"bounds", "obstacles", "robots", "seed"});
  if (!j.contains("bounds")) throw ScenarioError("scenario: missing 'bounds'");
  if (!j.contains("robots")) throw ScenarioError("scenario: missing 'robots'");

  Scenario s;
  s.workspace.bounds = rect_from_json(j.at("bounds"), "bounds");
  if (j.contains("obstacles")) {
    const json& obs = j.at("obstacles");
    if (!obs.is_array()) throw ScenarioError("obstacles: expected an array");
    for (std::size_t i = 0; i < obs.size(); ++i)
      s.workspace.obstacles.push_back(shape_from_json(obs[i], "obstacles[" + std::to_string(i) + "]"));
  }
  const json& robots = j.at("robots");
  if (!robots.is_array()) throw ScenarioError("robots: expected an array");
  for (std::size_t i = 0; i < robots.size(); ++i) {
    const std::string where = "robots[" + std::to_string(i) + "]";
    const json& rj = robots[i];
    require_object(rj, where, {"id", "radius", "init", "goal"});
    for (const char* key : {"id", "radius", "init", "goal"})
      if (!rj.contains(key)) throw ScenarioError(where + ": missing '" + key + "'");
    if (!rj.at("id").is_number_integer()) throw ScenarioError(where + ".id: expected an integer");
    RobotSpec r;
    r.id = rj.at("id").get<int>();
    r.radius = number(rj.at("radius"), where + ".radius");
    r.init = point_from_json(rj.at("init"), where + ".init");
    r.goal = shape_from_json(rj.at("goal"), where + ".goal");
    s.robots.push_back(r);
  }
  std::sort(s.robots.begin(), s.robots.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0))
      throw ScenarioError("seed: expected an unsigned integer");
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  validate(s);
  return s;
}

Scenario parse_scenario(const std::string& text)
{
  return scenario_from_json(json::parse(text));
}

Scenario load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

} // namespace inash
