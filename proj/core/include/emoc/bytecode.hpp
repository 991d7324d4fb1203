#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoc/lang.hpp"

namespace emoc {

/// The fixed instruction alphabet, in its normative order.
enum class Opcode : std::uint8_t {
  CONST,
  LOAD,
  STORE,
  ADD,
  SUB,
  MUL,
  DIV,
  MOD,
  NEG,
  EQ,
  NE,
  LT,
  LE,
  GT,
  GE,
  NOT,
  AND,
  OR,
  INDEX_LOAD,
  INDEX_STORE,
  LIST_NEW,
  LIST_PUSH,
  LIST_POP,
  LIST_LEN,
  JUMP,
  BRANCH,
  CALL,
  RET,
  POP_TOP,
};

inline constexpr std::size_t kOpcodeCount = 29;

std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);
const std::array<Opcode, kOpcodeCount>& all_opcodes();

/// Operand conventions:
///   CONST       arg = value; flag 1 marks a boolean constant
///   LOAD/STORE  arg = slot
///   LIST_NEW    flag 0: arg = element count popped into a literal;
///               flag 1: make_list(n, v) with n and v popped
///   JUMP        arg = absolute target
///   BRANCH      pops a boolean, jumps to arg when false; arg = -1 traps
///               with assertion-failure instead
///   AND/OR      short-circuit: if the top decides the result (false / true)
///               jump to arg keeping it, otherwise pop it
///   CALL        arg = callee function index
struct Instruction {
  Opcode op = Opcode::CONST;
  std::uint8_t flag = 0;
  std::int64_t arg = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

inline constexpr std::int64_t kAssertTarget = -1;

struct FunctionCode {
  std::string name;
  std::uint32_t arity = 0;
  std::uint32_t slot_count = 0;
  std::vector<Instruction> code;

  friend bool operator==(const FunctionCode&, const FunctionCode&) = default;
};

struct InstructionStream {
  std::vector<FunctionCode> functions;

  std::optional<std::size_t> find(std::string_view name) const;

  /// Canonical byte encoding of everything, function names included.
  std::string bytes() const;
  /// The same without function names. Calls refer to functions by index, so
  /// this is what instruction equivalence compares.
  std::string code_bytes() const;

  std::string disassemble() const;

  friend bool operator==(const InstructionStream&, const InstructionStream&) = default;
};

/// Lowers a resolved Ast. Folds all-constant expressions, drops asserts whose
/// condition folds to true, and refers to locals by slot only, so consistent
/// renaming never changes the output.
InstructionStream lower(const Ast& ast);

}  // namespace emoc
