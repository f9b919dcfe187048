#ifndef CVOTE_FEATSTRUCT_HPP
#define CVOTE_FEATSTRUCT_HPP

// Hierarchical morphological parses, constraints over them, and the
// one-directional subsumption test used by every rule match.
//
// Canonical parse form:
//
//   parse   := '[' item* ']'
//   item    := '[' name '=' ( atom | parse ) ']'
//
// Only `stem` may carry a nested parse. Names and atoms are lower-cased on
// load. The analyzer notation `[CONV=<cat>=<suffix>]` is accepted on input
// and rewritten: everything read so far in the current layer moves into a
// nested `stem`, and the new outer layer starts with [cat=<cat>][suffix=<suffix>].

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cvote {

inline constexpr std::string_view kStemFeature = "stem";
inline constexpr std::string_view kRootFeature = "root";
inline constexpr std::string_view kCatFeature = "cat";
inline constexpr std::string_view kSuffixFeature = "suffix";
inline constexpr std::string_view kConvFeature = "conv";

/// Syntax error in a parse, constraint, rule or data file. Line and column
/// are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// Structural violation (duplicate feature, misplaced `no`, ...).
class MalformedStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

class FeatureStructure;
using StructurePtr = std::shared_ptr<const FeatureStructure>;

/// The constraint-only value `no`, asserting an underived form.
struct NoStem {
  bool operator==(const NoStem&) const = default;
};

using Value = std::variant<std::string, NoStem, StructurePtr>;

struct Feature {
  std::string name;
  Value value;
};

/// Insertion-ordered attribute/value map with unique names.
class FeatureStructure {
 public:
  FeatureStructure() = default;

  explicit FeatureStructure(std::vector<Feature> features) {
    for (auto& f : features) add(std::move(f));
  }

  void add(Feature feature) {
    if (feature.name.empty()) throw MalformedStructure("empty feature name");
    if (find(feature.name) != nullptr)
      throw MalformedStructure("duplicate feature '" + feature.name + "'");
    if (const auto* atom = std::get_if<std::string>(&feature.value); atom && atom->empty())
      throw MalformedStructure("empty value for feature '" + feature.name + "'");
    if (const auto* nested = std::get_if<StructurePtr>(&feature.value); nested && !*nested)
      throw MalformedStructure("null nested structure for feature '" + feature.name + "'");
    features_.push_back(std::move(feature));
  }

  const std::vector<Feature>& features() const noexcept { return features_; }
  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }

  const Value* find(std::string_view name) const {
    auto it = std::find_if(features_.begin(), features_.end(),
                           [&](const Feature& f) { return f.name == name; });
    return it == features_.end() ? nullptr : &it->value;
  }

  /// Nested stem structure, or nullptr for underived forms.
  const FeatureStructure* stem() const {
    const Value* v = find(kStemFeature);
    if (v == nullptr) return nullptr;
    const auto* nested = std::get_if<StructurePtr>(v);
    return nested ? nested->get() : nullptr;
  }

  std::size_t depth() const {
    const FeatureStructure* s = stem();
    return s ? 1 + s->depth() : 0;
  }

 private:
  std::vector<Feature> features_;
};

inline bool operator==(const FeatureStructure& a, const FeatureStructure& b);

inline bool operator==(const Feature& a, const Feature& b) {
  if (a.name != b.name || a.value.index() != b.value.index()) return false;
  if (const auto* pa = std::get_if<StructurePtr>(&a.value))
    return **pa == *std::get<StructurePtr>(b.value);
  return a.value == b.value;
}

inline bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
  return a.features() == b.features();
}

/// Canonical bracket form, e.g. [[cat=noun][root=ev][case=gen]].
inline std::string serialize(const FeatureStructure& fs) {
  std::string out = "[";
  for (const Feature& f : fs.features()) {
    out += '[';
    out += f.name;
    out += '=';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>)
            out += v;
          else if constexpr (std::is_same_v<T, NoStem>)
            out += "no";
          else
            out += serialize(*v);
        },
        f.value);
    out += ']';
  }
  out += ']';
  return out;
}

/// A ground morphological analysis. Equality and hashing go through the
/// canonical serialization.
class Parse {
 public:
  static Parse from_structure(FeatureStructure fs) {
    check_ground(fs);
    Parse p;
    p.text_ = serialize(fs);
    p.structure_ = std::make_shared<const FeatureStructure>(std::move(fs));
    return p;
  }

  const FeatureStructure& structure() const noexcept { return *structure_; }
  const std::string& text() const noexcept { return text_; }

  /// Root of the innermost layer of the derivation chain; empty if absent.
  std::string_view root() const {
    const FeatureStructure* layer = structure_.get();
    std::string_view found;
    while (layer != nullptr) {
      if (const Value* v = layer->find(kRootFeature))
        if (const auto* atom = std::get_if<std::string>(v)) found = *atom;
      layer = layer->stem();
    }
    return found;
  }

  friend bool operator==(const Parse& a, const Parse& b) { return a.text_ == b.text_; }

 private:
  Parse() = default;

  static void check_ground(const FeatureStructure& fs) {
    for (const Feature& f : fs.features()) {
      if (std::holds_alternative<NoStem>(f.value))
        throw MalformedStructure("'no' is a constraint value and cannot appear in a parse");
      bool nested = std::holds_alternative<StructurePtr>(f.value);
      if (f.name == kStemFeature && !nested)
        throw MalformedStructure("stem of a parse must be a nested structure");
      if (nested && f.name != kStemFeature)
        throw MalformedStructure("only stem may hold a nested structure, not '" + f.name + "'");
      if (nested) check_ground(*std::get<StructurePtr>(f.value));
    }
  }

  StructurePtr structure_;
  std::string text_;
};

/// A pattern over one parse. Values may be atoms, a nested stem constraint,
/// or `no` (stem only).
class Constraint {
 public:
  Constraint() : structure_(std::make_shared<const FeatureStructure>()) {}

  static Constraint from_structure(FeatureStructure fs) {
    check_wellformed(fs);
    Constraint c;
    c.structure_ = std::make_shared<const FeatureStructure>(std::move(fs));
    return c;
  }

  const FeatureStructure& structure() const noexcept { return *structure_; }

  /// Rule-notation rendering, e.g. [cat:noun,stem:[cat:v]].
  std::string to_string() const { return render(*structure_); }

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return *a.structure_ == *b.structure_;
  }

 private:
  static void check_wellformed(const FeatureStructure& fs) {
    for (const Feature& f : fs.features()) {
      bool is_stem = f.name == kStemFeature;
      if (std::holds_alternative<NoStem>(f.value) && !is_stem)
        throw MalformedStructure("'no' is only allowed as the value of stem, not '" + f.name +
                                 "'");
      if (const auto* nested = std::get_if<StructurePtr>(&f.value)) {
        if (!is_stem)
          throw MalformedStructure("only stem may hold a nested constraint, not '" + f.name +
                                   "'");
        if ((*nested)->empty()) throw MalformedStructure("empty nested stem constraint");
        check_wellformed(**nested);
      } else if (is_stem && std::holds_alternative<std::string>(f.value)) {
        throw MalformedStructure("stem must be 'no' or a nested constraint");
      }
    }
  }

  static std::string render(const FeatureStructure& fs) {
    std::string out = "[";
    bool first = true;
    for (const Feature& f : fs.features()) {
      if (!first) out += ',';
      first = false;
      out += f.name;
      out += ':';
      if (const auto* atom = std::get_if<std::string>(&f.value))
        out += *atom;
      else if (std::holds_alternative<NoStem>(f.value))
        out += "no";
      else
        out += render(*std::get<StructurePtr>(f.value));
    }
    out += ']';
    return out;
  }

  StructurePtr structure_;
};

/// True iff every pair of `constraint` is satisfied by `parse`. Features of
/// the parse that the constraint does not mention are unconstrained.
inline bool subsumes(const FeatureStructure& constraint, const FeatureStructure& parse) {
  for (const Feature& f : constraint.features()) {
    const Value* actual = parse.find(f.name);
    if (std::holds_alternative<NoStem>(f.value)) {
      if (actual != nullptr) return false;
      continue;
    }
    if (actual == nullptr) return false;
    if (const auto* atom = std::get_if<std::string>(&f.value)) {
      const auto* other = std::get_if<std::string>(actual);
      if (other == nullptr || *other != *atom) return false;
    } else {
      const auto* other = std::get_if<StructurePtr>(actual);
      if (other == nullptr || !subsumes(*std::get<StructurePtr>(f.value), **other)) return false;
    }
  }
  return true;
}

inline bool subsumes(const Constraint& c, const Parse& p) {
  return subsumes(c.structure(), p.structure());
}

namespace detail {

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  FeatureStructure read_document() {
    skip_space();
    FeatureStructure fs = read_group();
    skip_space();
    if (!at_end()) fail("trailing characters after parse");
    return fs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void expect(char c) {
    if (at_end()) fail(std::string("unbalanced brackets: expected '") + c + "' at end of input");
    if (peek() != c) fail(std::string("expected '") + c + "', found '" + peek() + "'");
    advance();
  }

  FeatureStructure read_group() {
    expect('[');
    FeatureStructure layer;
    for (;;) {
      skip_space();
      if (at_end()) fail("unbalanced brackets: missing ']'");
      if (peek() == ']') {
        advance();
        return layer;
      }
      read_item(layer);
    }
  }

  void read_item(FeatureStructure& layer) {
    std::size_t item_line = line_;
    std::size_t item_column = column_;
    expect('[');
    std::string name;
    while (!at_end() && peek() != '=' && peek() != ']' && peek() != '[' &&
           !std::isspace(static_cast<unsigned char>(peek()))) {
      name += peek();
      advance();
    }
    if (name.empty()) fail("empty feature name");
    expect('=');
    name = to_lower_ascii(name);

    Value value;
    if (!at_end() && peek() == '[') {
      value = std::make_shared<const FeatureStructure>(read_group());
    } else {
      std::string atom;
      while (!at_end() && peek() != ']') {
        if (peek() == '[' || std::isspace(static_cast<unsigned char>(peek())))
          fail("unexpected character in value of '" + name + "'");
        atom += peek();
        advance();
      }
      if (atom.empty()) fail("empty value for feature '" + name + "'");
      value = to_lower_ascii(atom);
    }
    expect(']');

    try {
      if (name == kConvFeature) {
        apply_conversion(layer, value);
      } else {
        layer.add(Feature{std::move(name), std::move(value)});
      }
    } catch (const MalformedStructure& e) {
      throw ParseError(e.what(), item_line, item_column);
    }
  }

  static void apply_conversion(FeatureStructure& layer, const Value& value) {
    const auto* atom = std::get_if<std::string>(&value);
    if (atom == nullptr) throw MalformedStructure("conv takes <cat>=<suffix>");
    if (layer.empty()) throw MalformedStructure("conv with no preceding features");
    std::string_view target = *atom;
    auto eq = target.find('=');
    std::string cat(target.substr(0, eq));
    FeatureStructure outer;
    outer.add(Feature{std::string(kCatFeature), cat});
    if (eq != std::string_view::npos) {
      std::string suffix(target.substr(eq + 1));
      if (suffix.empty() || suffix.find('=') != std::string::npos)
        throw MalformedStructure("conv takes <cat>=<suffix>");
      outer.add(Feature{std::string(kSuffixFeature), suffix});
    }
    if (cat.empty()) throw MalformedStructure("conv takes <cat>=<suffix>");
    outer.add(Feature{std::string(kStemFeature),
                      std::make_shared<const FeatureStructure>(std::move(layer))});
    layer = std::move(outer);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

/// Reads one parse in bracket form (canonical or analyzer CONV notation).
inline Parse parse_feature_structure(std::string_view text) {
  detail::BracketReader reader(text);
  FeatureStructure fs = reader.read_document();
  try {
    return Parse::from_structure(std::move(fs));
  } catch (const MalformedStructure& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

}  // namespace cvote

template <>
struct std::hash<cvote::Parse> {
  std::size_t operator()(const cvote::Parse& p) const noexcept {
    return std::hash<std::string>{}(p.text());
  }
};

#endif  // CVOTE_FEATSTRUCT_HPP
