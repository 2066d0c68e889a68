#include "incidence/finite_geometry.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "incidence/flat.hpp"

namespace incidence {
namespace {

void build(std::size_t n, const std::vector<NamedSet>& sets, std::vector<std::string>& ids,
           std::vector<PointSet>& bits, std::vector<std::vector<std::size_t>>& members,
           std::vector<std::vector<std::size_t>>& reverse, const char* kind) {
  reverse.assign(n, {});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    PointSet b(n);
    for (std::size_t p : sets[i].members) {
      if (p >= n) throw std::invalid_argument(std::string(kind) + " '" + sets[i].id + "' references unknown point");
      if (b.test(p)) {
        throw std::invalid_argument(std::string(kind) + " '" + sets[i].id + "' lists a point twice");
      }
      b.set(p);
    }
    if (b.none()) throw std::invalid_argument(std::string(kind) + " '" + sets[i].id + "' has no points");
    ids.push_back(sets[i].id);
    std::vector<std::size_t> sorted;
    for (auto p = b.find_first(); p != PointSet::npos; p = b.find_next(p)) {
      sorted.push_back(p);
      reverse[p].push_back(i);
    }
    members.push_back(std::move(sorted));
    bits.push_back(std::move(b));
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

FiniteGeometry::FiniteGeometry(std::vector<std::string> point_ids, std::vector<NamedSet> lines,
                               std::vector<NamedSet> planes, std::size_t element_cap)
    : point_ids_(std::move(point_ids)) {
  if (point_ids_.empty()) throw std::invalid_argument("model has no points");
  if (point_ids_.size() + lines.size() + planes.size() > element_cap) {
    throw std::invalid_argument("model exceeds the element cap of " + std::to_string(element_cap));
  }
  std::unordered_set<std::string> seen;
  auto claim = [&](const std::string& id) {
    if (id.empty()) throw std::invalid_argument("empty element id");
    if (!seen.insert(id).second) throw std::invalid_argument("duplicate element id '" + id + "'");
  };
  for (const auto& id : point_ids_) claim(id);
  for (const auto& l : lines) claim(l.id);
  for (const auto& a : planes) claim(a.id);
  const std::size_t n = point_ids_.size();
  build(n, lines, line_ids_, lines_, line_points_, lines_through_, "line");
  build(n, planes, plane_ids_, planes_, plane_points_, planes_through_, "plane");
}

bool FiniteGeometry::collinear(std::initializer_list<std::size_t> points) const {
  const std::size_t anchor = *points.begin();
  for (std::size_t l : lines_through_[anchor]) {
    bool all = true;
    for (std::size_t p : points) all = all && lines_[l].test(p);
    if (all) return true;
  }
  return false;
}

bool FiniteGeometry::coplanar(std::initializer_list<std::size_t> points) const {
  const std::size_t anchor = *points.begin();
  for (std::size_t a : planes_through_[anchor]) {
    bool all = true;
    for (std::size_t p : points) all = all && planes_[a].test(p);
    if (all) return true;
  }
  return false;
}

bool FiniteGeometry::lines_skew(std::size_t l, std::size_t m) const {
  if (planes_.empty()) return !lines_meet(l, m);
  for (std::size_t a = 0; a < planes_.size(); ++a) {
    if (line_in_plane(l, a) && line_in_plane(m, a)) return false;
  }
  return true;
}

FiniteGeometry enumerate_pg3(const Ring& field) {
  if (!field.is_finite()) throw std::invalid_argument("enumerate_pg3: ring " + field.tag() + " is infinite");
  const auto points = points_of(Flat::whole(field));
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ids.push_back(points[i].str());
    index.emplace(ids.back(), i);
  }
  auto members_of = [&](const Flat& f) {
    std::vector<std::size_t> out;
    for (const auto& p : points_of(f)) out.push_back(index.at(p.str()));
    return out;
  };
  // Lines: joins of point pairs; planes: duals of points.
  std::map<std::string, Flat> lines;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Flat l = join(points[i], points[j]);
      lines.try_emplace(l.str(), std::move(l));
    }
  }
  std::vector<NamedSet> line_sets, plane_sets;
  for (const auto& [key, l] : lines) line_sets.push_back({"L" + key, members_of(l)});
  for (const auto& p : points) {
    const Flat plane = dual(p);
    plane_sets.push_back({"H" + plane.str(), members_of(plane)});
  }
  return FiniteGeometry(std::move(ids), std::move(line_sets), std::move(plane_sets));
}

FiniteGeometry parse_abstract_model(const std::string& text, std::size_t element_cap) {
  enum class Section { none, points, lines, planes } section = Section::none;
  std::vector<std::string> point_ids;
  std::unordered_map<std::string, std::size_t> point_index;
  struct Pending {
    std::string id;
    std::vector<std::string> members;
    std::size_t line_no;
  };
  std::vector<Pending> lines, planes;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    if (body == "points:") {
      section = Section::points;
      continue;
    }
    if (body == "lines:") {
      section = Section::lines;
      continue;
    }
    if (body == "planes:") {
      section = Section::planes;
      continue;
    }
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (section == Section::none) throw std::invalid_argument("entry outside of a section" + where);
    const auto colon = body.find(':');
    const std::string id = trim(colon == std::string::npos ? body : body.substr(0, colon));
    const std::string rest = colon == std::string::npos ? std::string() : body.substr(colon + 1);
    if (id.empty() || id.find_first_of(" \t") != std::string::npos) {
      throw std::invalid_argument("malformed element id" + where);
    }
    std::istringstream members_in(rest);
    std::vector<std::string> members;
    for (std::string m; members_in >> m;) members.push_back(m);
    if (section == Section::points) {
      if (!members.empty()) throw std::invalid_argument("point entries take no members" + where);
      if (!point_index.emplace(id, point_ids.size()).second) {
        throw std::invalid_argument("duplicate element id '" + id + "'" + where);
      }
      point_ids.push_back(id);
    } else {
      if (colon == std::string::npos || members.empty()) {
        throw std::invalid_argument("entry '" + id + "' needs 'id: member ...'" + where);
      }
      (section == Section::lines ? lines : planes).push_back({id, std::move(members), line_no});
    }
  }
  if (point_ids.empty()) throw std::invalid_argument("model file declares no points");

  auto resolve = [&](const std::vector<Pending>& pending) {
    std::vector<NamedSet> out;
    for (const auto& p : pending) {
      NamedSet s{p.id, {}};
      for (const auto& m : p.members) {
        auto it = point_index.find(m);
        if (it == point_index.end()) {
          throw std::invalid_argument("'" + p.id + "' references unknown point '" + m + "' (line " +
                                      std::to_string(p.line_no) + ")");
        }
        s.members.push_back(it->second);
      }
      out.push_back(std::move(s));
    }
    return out;
  };
  return FiniteGeometry(std::move(point_ids), resolve(lines), resolve(planes), element_cap);
}

FiniteGeometry load_abstract_model(const std::filesystem::path& path, std::size_t element_cap) {
  std::ifstream in(path);
  if (!in || !std::filesystem::is_regular_file(path)) {
    throw std::invalid_argument("cannot open model file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_abstract_model(buffer.str(), element_cap);
}

}  // namespace incidence
