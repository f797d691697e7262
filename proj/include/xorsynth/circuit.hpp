#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gf2.hpp"

namespace xorsynth {

/*! \brief Reference to a circuit node: input x<i> or gate t<j>.
 *
 * Indices are 1-based ordinals within the kind, mirroring the x1/t1
 * names of the SLP text format.
 */
struct node_ref {
  enum class node_kind : std::uint8_t { input, gate };

  node_kind kind = node_kind::input;
  std::uint32_t index = 0;

  static node_ref input(std::uint32_t i) { return {node_kind::input, i}; }
  static node_ref gate(std::uint32_t j) { return {node_kind::gate, j}; }

  bool is_input() const { return kind == node_kind::input; }
  bool is_gate() const { return kind == node_kind::gate; }

  /// SLP name, e.g. "x3" or "t7".
  std::string name() const {
    return (is_input() ? "x" : "t") + std::to_string(index);
  }

  friend bool operator==(const node_ref& a, const node_ref& b) = default;
  friend auto operator<=>(const node_ref& a, const node_ref& b) = default;
};

struct xor_gate {
  node_ref left;
  node_ref right;

  friend bool operator==(const xor_gate& a, const xor_gate& b) = default;
};

/// An output either taps a node or is the constant-zero marker (nullopt),
/// used for all-zero matrix rows.
using output_ref = std::optional<node_ref>;

/*! \brief A linear circuit: a DAG of fan-in-2 XOR gates.
 *
 * Gates are appended in topological order; a gate may only reference
 * inputs or earlier gates, so acyclicity holds by construction.  The
 * size of the circuit is the number of gates.  Structural equality is
 * member-wise (no isomorphism check).  Immutable once built apart from
 * add_gate/add_output during construction.
 */
class linear_circuit {
public:
  linear_circuit() = default;

  explicit linear_circuit(std::size_t num_inputs) : num_inputs_(num_inputs) {}

  std::size_t num_inputs() const { return num_inputs_; }
  std::size_t num_gates() const { return gates_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t node_count() const { return num_inputs_ + gates_.size(); }

  const std::vector<xor_gate>& gates() const { return gates_; }
  const std::vector<output_ref>& outputs() const { return outputs_; }

  const xor_gate& gate(std::uint32_t j) const {
    if (j == 0 || j > gates_.size()) {
      throw std::out_of_range("linear_circuit: gate t" + std::to_string(j));
    }
    return gates_[j - 1];
  }

  node_ref add_gate(node_ref left, node_ref right) {
    check_ref(left, static_cast<std::uint32_t>(gates_.size()));
    check_ref(right, static_cast<std::uint32_t>(gates_.size()));
    gates_.push_back({left, right});
    return node_ref::gate(static_cast<std::uint32_t>(gates_.size()));
  }

  void add_output(output_ref ref) {
    if (ref) {
      check_ref(*ref, static_cast<std::uint32_t>(gates_.size()));
    }
    outputs_.push_back(ref);
  }

  /// 0-based position in node order: inputs first, then gates.
  std::size_t node_ordinal(node_ref ref) const {
    check_ref(ref, static_cast<std::uint32_t>(gates_.size()));
    return ref.is_input() ? ref.index - 1 : num_inputs_ + ref.index - 1;
  }

  node_ref node_at(std::size_t ordinal) const {
    if (ordinal >= node_count()) {
      throw std::out_of_range("linear_circuit: node ordinal out of range");
    }
    return ordinal < num_inputs_
               ? node_ref::input(static_cast<std::uint32_t>(ordinal + 1))
               : node_ref::gate(static_cast<std::uint32_t>(ordinal - num_inputs_ + 1));
  }

  friend bool operator==(const linear_circuit& a, const linear_circuit& b) = default;

private:
  void check_ref(node_ref ref, std::uint32_t gates_available) const {
    if (ref.index == 0) {
      throw std::invalid_argument("linear_circuit: zero node index");
    }
    if (ref.is_input() && ref.index > num_inputs_) {
      throw std::invalid_argument("linear_circuit: input x" +
                                  std::to_string(ref.index) + " of " +
                                  std::to_string(num_inputs_));
    }
    if (ref.is_gate() && ref.index > gates_available) {
      throw std::invalid_argument("linear_circuit: gate t" +
                                  std::to_string(ref.index) +
                                  " referenced before definition");
    }
  }

  std::size_t num_inputs_ = 0;
  std::vector<xor_gate> gates_;
  std::vector<output_ref> outputs_;
};

/*! \brief Value vector of every node, in node-ordinal order.
 *
 * kappa(x_i) = e^(i); kappa(u) = kappa(left) ^ kappa(right) for gates,
 * computed in topological order.  kappa(u)_i = 1 iff x_i is a term of
 * the parity function node u computes.
 */
inline std::vector<bit_vector> value_vectors(const linear_circuit& c) {
  const std::size_t n = c.num_inputs();
  std::vector<bit_vector> kappa;
  kappa.reserve(c.node_count());
  for (std::size_t i = 1; i <= n; ++i) {
    kappa.push_back(bit_vector::unit(n, i));
  }
  for (const auto& g : c.gates()) {
    bit_vector v = kappa[c.node_ordinal(g.left)];
    v ^= kappa[c.node_ordinal(g.right)];
    kappa.push_back(std::move(v));
  }
  return kappa;
}

/// True iff kappa(output_i) equals row i of the matrix for every i
/// (the zero output marker matches exactly the all-zero row).
inline bool computes(const linear_circuit& c, const bit_matrix& a) {
  if (c.num_inputs() != a.cols() || c.num_outputs() != a.rows()) {
    throw std::invalid_argument("computes: circuit is " +
                                std::to_string(c.num_outputs()) + "x" +
                                std::to_string(c.num_inputs()) + ", matrix is " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  }
  const auto kappa = value_vectors(c);
  for (std::size_t i = 0; i < c.num_outputs(); ++i) {
    const auto& out = c.outputs()[i];
    if (!out) {
      if (!a.row(i + 1).is_zero()) {
        return false;
      }
    } else if (kappa[c.node_ordinal(*out)] != a.row(i + 1)) {
      return false;
    }
  }
  return true;
}

/// Evaluates the circuit gate by gate on a concrete input vector.
inline bit_vector evaluate(const linear_circuit& c, const bit_vector& x) {
  if (x.length() != c.num_inputs()) {
    throw std::invalid_argument("evaluate: input length mismatch");
  }
  std::vector<char> value(c.node_count());
  for (std::size_t i = 1; i <= c.num_inputs(); ++i) {
    value[i - 1] = x.get(i) ? 1 : 0;
  }
  std::size_t ord = c.num_inputs();
  for (const auto& g : c.gates()) {
    value[ord++] =
        static_cast<char>(value[c.node_ordinal(g.left)] ^ value[c.node_ordinal(g.right)]);
  }
  bit_vector y(c.num_outputs());
  for (std::size_t i = 0; i < c.num_outputs(); ++i) {
    const auto& out = c.outputs()[i];
    if (out && value[c.node_ordinal(*out)]) {
      y.set(i + 1, true);
    }
  }
  return y;
}

/*! \brief Result of restricting a set of inputs to zero.
 *
 * A gate is eliminated iff at least one child's value vector becomes
 * zero once the chosen coordinates are cleared; if both children go to
 * zero the gate itself goes to zero and the effect cascades upward.
 * The eliminated set depends only on the circuit and the input set,
 * never on processing order.
 */
struct elimination_result {
  linear_circuit reduced;
  /// 1-based ordinals of eliminated gates in the original circuit.
  std::set<std::uint32_t> eliminated;
  /// Per output label: the surviving node in `reduced` (nullopt = zero).
  std::vector<output_ref> forwarded_outputs;
  /// Old gate ordinal -> new gate ordinal for surviving gates ([j-1] slot).
  std::vector<std::optional<std::uint32_t>> gate_map;
};

inline elimination_result eliminate(const linear_circuit& c,
                                    const std::set<std::size_t>& zeroed_inputs) {
  const std::size_t n = c.num_inputs();
  for (std::size_t i : zeroed_inputs) {
    if (i == 0 || i > n) {
      throw std::invalid_argument("eliminate: input x" + std::to_string(i) +
                                  " out of range");
    }
  }

  // Value vectors with the zeroed coordinates cleared.
  auto kappa = value_vectors(c);
  for (auto& v : kappa) {
    for (std::size_t i : zeroed_inputs) {
      v.set(i, false);
    }
  }
  std::vector<char> is_zero(kappa.size());
  for (std::size_t v = 0; v < kappa.size(); ++v) {
    is_zero[v] = kappa[v].is_zero() ? 1 : 0;
  }

  elimination_result result;
  result.gate_map.assign(c.num_gates(), std::nullopt);

  // Resolve every node to its surviving stand-in, in topological order:
  // an eliminated gate forwards its nonzero child, or the zero marker
  // when both children vanished.
  std::vector<output_ref> resolved(c.node_count());
  for (std::size_t i = 1; i <= n; ++i) {
    resolved[i - 1] = zeroed_inputs.count(i)
                          ? output_ref{}
                          : output_ref{node_ref::input(static_cast<std::uint32_t>(i))};
  }

  linear_circuit reduced(n);
  for (std::uint32_t j = 1; j <= c.num_gates(); ++j) {
    const auto& g = c.gate(j);
    const std::size_t ord = c.node_ordinal(node_ref::gate(j));
    const bool left_zero = is_zero[c.node_ordinal(g.left)] != 0;
    const bool right_zero = is_zero[c.node_ordinal(g.right)] != 0;
    if (!left_zero && !right_zero) {
      const node_ref nl = *resolved[c.node_ordinal(g.left)];
      const node_ref nr = *resolved[c.node_ordinal(g.right)];
      auto remap = [&](node_ref r) {
        return r.is_input() ? r : node_ref::gate(*result.gate_map[r.index - 1]);
      };
      const node_ref fresh = reduced.add_gate(remap(nl), remap(nr));
      result.gate_map[j - 1] = fresh.index;
      resolved[ord] = node_ref::gate(j);
    } else {
      result.eliminated.insert(j);
      if (left_zero && right_zero) {
        resolved[ord] = std::nullopt;
      } else {
        resolved[ord] = resolved[c.node_ordinal(left_zero ? g.right : g.left)];
      }
    }
  }

  for (const auto& out : c.outputs()) {
    output_ref target;
    if (out) {
      target = resolved[c.node_ordinal(*out)];
      if (target && target->is_gate()) {
        target = node_ref::gate(*result.gate_map[target->index - 1]);
      }
    }
    reduced.add_output(target);
    result.forwarded_outputs.push_back(target);
  }

  result.reduced = std::move(reduced);
  return result;
}

namespace detail {

inline node_ref parse_slp_ref(std::string_view tok, std::size_t num_inputs,
                              std::size_t gates_defined) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 't')) {
    throw parse_error("slp: unknown identifier '" + std::string(tok) + "'");
  }
  std::uint32_t idx = 0;
  const auto res = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || idx == 0) {
    throw parse_error("slp: unknown identifier '" + std::string(tok) + "'");
  }
  if (tok[0] == 'x') {
    if (idx > num_inputs) {
      throw parse_error("slp: unknown identifier '" + std::string(tok) +
                        "' (only " + std::to_string(num_inputs) + " inputs)");
    }
    return node_ref::input(idx);
  }
  if (idx > gates_defined) {
    throw parse_error("slp: '" + std::string(tok) + "' used before definition");
  }
  return node_ref::gate(idx);
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
      ++end;
    }
    if (end > pos) {
      toks.push_back(line.substr(pos, end - pos));
    }
    pos = end;
  }
  return toks;
}

} // namespace detail

/*! \brief Parses the SLP text format.
 *
 * Header "inputs n"; gate lines "t<j> = <ref> + <ref>" with gates
 * numbered consecutively from 1 in file order; output lines
 * "y<i> = <ref>" (or "y<i> = 0" for a constant-zero output) after all
 * gates.  Blank lines and '#' comments are ignored.
 */
inline linear_circuit parse_slp(std::string_view text) {
  std::optional<linear_circuit> circuit;
  std::uint32_t next_gate = 1;
  std::uint32_t next_output = 1;
  bool in_outputs = false;

  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    std::string_view line;
    const std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) {
      line = text;
      text = {};
    } else {
      line = text.substr(0, nl);
      text.remove_prefix(nl + 1);
    }
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto toks = detail::split_tokens(line);
    if (toks.empty()) {
      if (text.empty()) {
        break;
      }
      continue;
    }
    const std::string where = " (line " + std::to_string(line_no) + ")";

    if (!circuit) {
      std::size_t n = 0;
      if (toks.size() != 2 || toks[0] != "inputs") {
        throw parse_error("slp: expected header \"inputs n\"" + where);
      }
      const auto res =
          std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), n);
      if (res.ec != std::errc{} || res.ptr != toks[1].data() + toks[1].size() ||
          n == 0) {
        throw parse_error("slp: invalid input count" + where);
      }
      circuit.emplace(n);
      continue;
    }

    if (toks[0].size() >= 2 && toks[0][0] == 't') {
      if (in_outputs) {
        throw parse_error("slp: gate line after output lines" + where);
      }
      if (toks.size() != 5 || toks[1] != "=" || toks[3] != "+") {
        throw parse_error("slp: gate must have fan-in 2: \"t<j> = <ref> + <ref>\"" +
                          where);
      }
      if (toks[0] != "t" + std::to_string(next_gate)) {
        throw parse_error("slp: expected gate t" + std::to_string(next_gate) +
                          ", got '" + std::string(toks[0]) + "'" + where);
      }
      const node_ref l = detail::parse_slp_ref(toks[2], circuit->num_inputs(),
                                               next_gate - 1);
      const node_ref r = detail::parse_slp_ref(toks[4], circuit->num_inputs(),
                                               next_gate - 1);
      circuit->add_gate(l, r);
      ++next_gate;
      continue;
    }

    if (toks[0].size() >= 2 && toks[0][0] == 'y') {
      if (toks.size() != 3 || toks[1] != "=") {
        throw parse_error("slp: output must be \"y<i> = <ref>\"" + where);
      }
      std::uint32_t label = 0;
      const auto lres = std::from_chars(toks[0].data() + 1,
                                        toks[0].data() + toks[0].size(), label);
      if (lres.ec != std::errc{} || lres.ptr != toks[0].data() + toks[0].size() ||
          label == 0) {
        throw parse_error("slp: unrecognized line" + where);
      }
      if (label < next_output) {
        throw parse_error("slp: duplicate output label '" + std::string(toks[0]) +
                          "'" + where);
      }
      if (label != next_output) {
        throw parse_error("slp: expected output y" + std::to_string(next_output) +
                          ", got '" + std::string(toks[0]) + "'" + where);
      }
      in_outputs = true;
      if (toks[2] == "0") {
        circuit->add_output(std::nullopt);
      } else {
        circuit->add_output(detail::parse_slp_ref(toks[2], circuit->num_inputs(),
                                                  next_gate - 1));
      }
      ++next_output;
      continue;
    }

    throw parse_error("slp: unrecognized line" + where);
  }

  if (!circuit) {
    throw parse_error("slp: empty input");
  }
  return *circuit;
}

inline std::string serialize_slp(const linear_circuit& c) {
  std::string out = "inputs " + std::to_string(c.num_inputs()) + "\n";
  for (std::uint32_t j = 1; j <= c.num_gates(); ++j) {
    const auto& g = c.gate(j);
    out += "t" + std::to_string(j) + " = " + g.left.name() + " + " +
           g.right.name() + "\n";
  }
  for (std::size_t i = 0; i < c.num_outputs(); ++i) {
    const auto& ref = c.outputs()[i];
    out += "y" + std::to_string(i + 1) + " = " + (ref ? ref->name() : "0") + "\n";
  }
  return out;
}

} // namespace xorsynth
