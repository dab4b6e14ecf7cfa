#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "stab/geometry.hpp"

namespace stab {

using Json = nlohmann::ordered_json;

// Instance file: rational coordinates serialized as "p/q" strings (plain
// integers allowed), epsilon as "p/q", free-form meta tags.
struct InstanceDoc {
  Instance inst;
  std::string meta;  // serialized meta object, "{}" when absent
};

InstanceDoc parse_instance_text(const std::string& text);
InstanceDoc load_instance(const std::string& path);
std::string emit_instance(const Instance& inst, const std::string& meta_json);
void save_instance(const Instance& inst, const std::string& meta_json,
                   const std::string& path);

std::string emit_solution(const Solution& sol, const Rat& grid_unit);
Solution parse_solution_text(const std::string& text, Rat* grid_unit_out);
Solution load_solution(const std::string& path, Rat* grid_unit_out);

// Geometric equality: same epsilon and the same rectangles as exact
// rationals, regardless of the serialized unit.
bool same_instance(const Instance& a, const Instance& b);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace stab
