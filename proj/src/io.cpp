#include "stab/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stab {

namespace {

Rat parse_coord(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rat::parse(v.get<std::string>());
    } catch (const Error& e) {
      fail(Errc::parse_error, where + ": " + e.what());
    }
  }
  fail(Errc::parse_error, where + ": expected integer or \"p/q\" string");
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b,
                         const std::string& where) {
  __int128 l = (__int128)a / std::gcd(a, b) * b;
  if (l > (__int128)1 << 40)
    fail(Errc::parse_error, where + ": coordinate denominators too fine");
  return static_cast<std::int64_t>(l);
}

}  // namespace

InstanceDoc parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("invalid json: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "top level must be an object");
  InstanceDoc out;
  if (doc.contains("epsilon"))
    out.inst.epsilon = parse_coord(doc["epsilon"], "epsilon");
  if (!doc.contains("rects") || !doc["rects"].is_array())
    fail(Errc::parse_error, "missing rects array");

  struct RatRect {
    Rat x1, y1, x2, y2;
  };
  std::vector<RatRect> rr;
  std::int64_t den = 1;
  int idx = 0;
  for (const auto& jr : doc["rects"]) {
    std::string where = "rects[" + std::to_string(idx) + "]";
    if (!jr.is_object()) fail(Errc::parse_error, where + ": expected object");
    for (const char* f : {"x1", "y1", "x2", "y2"})
      if (!jr.contains(f))
        fail(Errc::parse_error, where + ": missing field " + f);
    RatRect r{parse_coord(jr["x1"], where + ".x1"),
              parse_coord(jr["y1"], where + ".y1"),
              parse_coord(jr["x2"], where + ".x2"),
              parse_coord(jr["y2"], where + ".y2")};
    if (r.x1 >= r.x2 || r.y1 >= r.y2)
      fail(Errc::parse_error, where + ": degenerate rectangle");
    for (const Rat* c : {&r.x1, &r.y1, &r.x2, &r.y2})
      den = lcm_checked(den, c->den(), where);
    rr.push_back(r);
    ++idx;
  }
  if (rr.size() > 4096) fail(Errc::parse_error, "too many rectangles");
  out.inst.grid_unit = Rat(1, den);
  for (std::size_t i = 0; i < rr.size(); ++i) {
    Rect r;
    r.x1 = (rr[i].x1 * Rat(den)).num();
    r.y1 = (rr[i].y1 * Rat(den)).num();
    r.x2 = (rr[i].x2 * Rat(den)).num();
    r.y2 = (rr[i].y2 * Rat(den)).num();
    constexpr Coord limit = Coord(1) << 34;
    if (std::abs(r.x1) > limit || std::abs(r.x2) > limit ||
        std::abs(r.y1) > limit || std::abs(r.y2) > limit)
      fail(Errc::parse_error,
           "rects[" + std::to_string(i) + "]: coordinate out of range");
    out.inst.rects.push_back(r);
  }
  seal_instance(out.inst);
  out.meta = doc.contains("meta") ? doc["meta"].dump() : "{}";
  return out;
}

std::string emit_instance(const Instance& inst, const std::string& meta_json) {
  Json doc;
  doc["schema_version"] = "1";
  doc["epsilon"] = inst.epsilon.str();
  doc["rects"] = Json::array();
  for (const auto& r : inst.rects) {
    Json jr;
    jr["x1"] = (Rat(r.x1) * inst.grid_unit).str();
    jr["y1"] = (Rat(r.y1) * inst.grid_unit).str();
    jr["x2"] = (Rat(r.x2) * inst.grid_unit).str();
    jr["y2"] = (Rat(r.y2) * inst.grid_unit).str();
    doc["rects"].push_back(jr);
  }
  doc["meta"] = Json::parse(meta_json.empty() ? "{}" : meta_json);
  return doc.dump(2) + "\n";
}

std::string emit_solution(const Solution& sol, const Rat& grid_unit) {
  Json doc;
  doc["schema_version"] = "1";
  doc["solver_tag"] = sol.solver_tag;
  doc["cost"] = sol.cost;
  doc["grid_unit"] = grid_unit.str();
  doc["segments"] = Json::array();
  for (const auto& s : sol.segments) {
    Json js;
    js["orientation"] =
        s.orientation == Orientation::horizontal ? "horizontal" : "vertical";
    js["anchor"] = s.anchor;
    js["lo"] = s.lo;
    js["hi"] = s.hi;
    doc["segments"].push_back(js);
  }
  return doc.dump(2) + "\n";
}

Solution parse_solution_text(const std::string& text, Rat* grid_unit_out) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("invalid json: ") + e.what());
  }
  Solution sol;
  sol.solver_tag = doc.value("solver_tag", "");
  sol.cost = doc.value("cost", std::int64_t(0));
  if (grid_unit_out && doc.contains("grid_unit"))
    *grid_unit_out = Rat::parse(doc["grid_unit"].get<std::string>());
  if (!doc.contains("segments") || !doc["segments"].is_array())
    fail(Errc::parse_error, "missing segments array");
  int idx = 0;
  for (const auto& js : doc["segments"]) {
    std::string where = "segments[" + std::to_string(idx) + "]";
    std::string o = js.value("orientation", "");
    if (o != "horizontal" && o != "vertical")
      fail(Errc::parse_error, where + ": bad orientation");
    Segment s;
    s.orientation =
        o == "horizontal" ? Orientation::horizontal : Orientation::vertical;
    if (!js.contains("anchor") || !js.contains("lo") || !js.contains("hi"))
      fail(Errc::parse_error, where + ": missing coordinate");
    s.anchor = js["anchor"].get<std::int64_t>();
    s.lo = js["lo"].get<std::int64_t>();
    s.hi = js["hi"].get<std::int64_t>();
    if (s.lo > s.hi) fail(Errc::parse_error, where + ": lo above hi");
    sol.segments.push_back(s);
    ++idx;
  }
  return sol;
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.epsilon != b.epsilon || a.rects.size() != b.rects.size()) return false;
  for (std::size_t i = 0; i < a.rects.size(); ++i) {
    const Rect &ra = a.rects[i], &rb = b.rects[i];
    if (Rat(ra.x1) * a.grid_unit != Rat(rb.x1) * b.grid_unit) return false;
    if (Rat(ra.y1) * a.grid_unit != Rat(rb.y1) * b.grid_unit) return false;
    if (Rat(ra.x2) * a.grid_unit != Rat(rb.x2) * b.grid_unit) return false;
    if (Rat(ra.y2) * a.grid_unit != Rat(rb.y2) * b.grid_unit) return false;
  }
  return true;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(Errc::parse_error, "cannot open for writing: " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::parse_error, "cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

InstanceDoc load_instance(const std::string& path) {
  return parse_instance_text(read_file(path));
}

void save_instance(const Instance& inst, const std::string& meta_json,
                   const std::string& path) {
  write_file(path, emit_instance(inst, meta_json));
}

Solution load_solution(const std::string& path, Rat* grid_unit_out) {
  return parse_solution_text(read_file(path), grid_unit_out);
}

}  // namespace stab
