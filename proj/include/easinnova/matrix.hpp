#pragma once

// The EasInnova 3x3 matrix: MDA layers (CIM/PIM/PSM) x innovation stages
// (AsIs/Transformation/ToBe). Cells are ordered row-major: the CIM row
// first, AsIs before Transformation before ToBe within a row.

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace easinnova {

enum class Layer { Cim, Pim, Psm };
enum class Stage { AsIs, Transformation, ToBe };

inline std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::Cim: return "cim";
    case Layer::Pim: return "pim";
    case Layer::Psm: return "psm";
  }
  return "?";
}

inline std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::AsIs: return "asis";
    case Stage::Transformation: return "transformation";
    case Stage::ToBe: return "tobe";
  }
  return "?";
}

inline std::optional<Layer> parse_layer(std::string_view s) {
  if (s == "cim") return Layer::Cim;
  if (s == "pim") return Layer::Pim;
  if (s == "psm") return Layer::Psm;
  return std::nullopt;
}

inline std::optional<Stage> parse_stage(std::string_view s) {
  if (s == "asis") return Stage::AsIs;
  if (s == "transformation") return Stage::Transformation;
  if (s == "tobe") return Stage::ToBe;
  return std::nullopt;
}

struct CellId {
  Layer layer = Layer::Cim;
  Stage stage = Stage::AsIs;

  // Row-major position, 0..8.
  int index() const { return static_cast<int>(layer) * 3 + static_cast<int>(stage); }

  auto operator<=>(const CellId&) const = default;

  // Directory-style path, e.g. "pim/tobe".
  std::string path() const {
    return std::string(to_string(layer)) + "/" + std::string(to_string(stage));
  }

  // Display label, e.g. "PIM-ToBe".
  std::string label() const {
    static constexpr std::array<std::string_view, 3> layers = {"CIM", "PIM", "PSM"};
    static constexpr std::array<std::string_view, 3> stages = {"AsIs", "Transformation", "ToBe"};
    return std::string(layers[static_cast<int>(layer)]) + "-" +
           std::string(stages[static_cast<int>(stage)]);
  }
};

inline constexpr std::array<CellId, 9> all_cells() {
  return {{{Layer::Cim, Stage::AsIs},
           {Layer::Cim, Stage::Transformation},
           {Layer::Cim, Stage::ToBe},
           {Layer::Pim, Stage::AsIs},
           {Layer::Pim, Stage::Transformation},
           {Layer::Pim, Stage::ToBe},
           {Layer::Psm, Stage::AsIs},
           {Layer::Psm, Stage::Transformation},
           {Layer::Psm, Stage::ToBe}}};
}

inline CellId cell_from_index(int index) {
  if (index < 0 || index > 8) throw std::out_of_range("cell index out of range");
  return {static_cast<Layer>(index / 3), static_cast<Stage>(index % 3)};
}

inline std::optional<CellId> parse_cell(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto layer = parse_layer(s.substr(0, slash));
  auto stage = parse_stage(s.substr(slash + 1));
  if (!layer || !stage) return std::nullopt;
  return CellId{*layer, *stage};
}

}  // namespace easinnova
