#include "emoc/bytecode.hpp"

#include <cstring>

namespace emoc {
namespace {

constexpr std::array<std::string_view, kOpcodeCount> kNames = {
    "CONST",      "LOAD",        "STORE",    "ADD",       "SUB",       "MUL",
    "DIV",        "MOD",         "NEG",      "EQ",        "NE",        "LT",
    "LE",         "GT",          "GE",       "NOT",       "AND",       "OR",
    "INDEX_LOAD", "INDEX_STORE", "LIST_NEW", "LIST_PUSH", "LIST_POP",  "LIST_LEN",
    "JUMP",       "BRANCH",      "CALL",     "RET",       "POP_TOP",
};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

std::string_view opcode_name(Opcode op) { return kNames[static_cast<std::size_t>(op)]; }

std::optional<Opcode> opcode_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

const std::array<Opcode, kOpcodeCount>& all_opcodes() {
  static const auto ops = [] {
    std::array<Opcode, kOpcodeCount> out{};
    for (std::size_t i = 0; i < kOpcodeCount; ++i) out[i] = static_cast<Opcode>(i);
    return out;
  }();
  return ops;
}

std::optional<std::size_t> InstructionStream::find(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string encode(const InstructionStream& stream, bool with_names) {
  std::string out;
  put_u32(out, static_cast<std::uint32_t>(stream.functions.size()));
  for (const auto& fn : stream.functions) {
    if (with_names) {
      put_u32(out, static_cast<std::uint32_t>(fn.name.size()));
      out += fn.name;
    }
    put_u32(out, fn.arity);
    put_u32(out, fn.slot_count);
    put_u32(out, static_cast<std::uint32_t>(fn.code.size()));
    for (const auto& ins : fn.code) {
      out.push_back(static_cast<char>(ins.op));
      out.push_back(static_cast<char>(ins.flag));
      put_u64(out, static_cast<std::uint64_t>(ins.arg));
    }
  }
  return out;
}

}  // namespace

std::string InstructionStream::bytes() const { return encode(*this, true); }

std::string InstructionStream::code_bytes() const { return encode(*this, false); }

std::string InstructionStream::disassemble() const {
  std::string out;
  for (const auto& fn : functions) {
    out += "fn " + fn.name + " arity=" + std::to_string(fn.arity) +
           " slots=" + std::to_string(fn.slot_count) + "\n";
    for (std::size_t i = 0; i < fn.code.size(); ++i) {
      const auto& ins = fn.code[i];
      out += "  " + std::to_string(i) + "\t" + std::string(opcode_name(ins.op));
      switch (ins.op) {
        case Opcode::CONST:
          out += ins.flag ? (ins.arg ? " true" : " false") : " " + std::to_string(ins.arg);
          break;
        case Opcode::LIST_NEW:
          out += ins.flag ? " fill" : " " + std::to_string(ins.arg);
          break;
        case Opcode::LOAD:
        case Opcode::STORE:
        case Opcode::JUMP:
        case Opcode::BRANCH:
        case Opcode::AND:
        case Opcode::OR:
        case Opcode::CALL:
          out += " " + std::to_string(ins.arg);
          break;
        default:
          break;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace emoc
