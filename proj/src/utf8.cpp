#include "lbpe/utf8.hpp"

namespace lbpe::utf8 {
namespace {

// Length of the sequence introduced by `lead`, or 0 if `lead` cannot start a
// well-formed sequence.
int sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if (lead >= 0xC2 && lead <= 0xDF) return 2;
  if (lead >= 0xE0 && lead <= 0xEF) return 3;
  if (lead >= 0xF0 && lead <= 0xF4) return 4;
  return 0;
}

// Bounds for the second byte, which carry the overlong/surrogate/range rules.
bool second_byte_ok(unsigned char lead, unsigned char b) {
  switch (lead) {
    case 0xE0:
      return b >= 0xA0 && b <= 0xBF;
    case 0xED:
      return b >= 0x80 && b <= 0x9F;
    case 0xF0:
      return b >= 0x90 && b <= 0xBF;
    case 0xF4:
      return b >= 0x80 && b <= 0x8F;
    default:
      return b >= 0x80 && b <= 0xBF;
  }
}

// Decodes one scalar at `pos`. On failure returns false and sets `consumed`
// to the length of the maximal invalid subsequence (at least 1).
bool decode_one(std::string_view s, std::size_t pos, char32_t& cp,
                std::size_t& consumed) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  const int len = sequence_length(lead);
  if (len == 0) {
    consumed = 1;
    return false;
  }
  if (len == 1) {
    cp = lead;
    consumed = 1;
    return true;
  }
  char32_t value = lead & (0xFF >> (len + 1));
  for (int k = 1; k < len; ++k) {
    if (pos + k >= s.size()) {
      consumed = k;
      return false;
    }
    const auto b = static_cast<unsigned char>(s[pos + k]);
    const bool ok = k == 1 ? second_byte_ok(lead, b) : (b >= 0x80 && b <= 0xBF);
    if (!ok) {
      consumed = k;
      return false;
    }
    value = (value << 6) | (b & 0x3F);
  }
  cp = value;
  consumed = len;
  return true;
}

}  // namespace

DecodeResult decode(std::string_view bytes) {
  DecodeResult out;
  out.codepoints.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp = 0;
    std::size_t consumed = 0;
    if (decode_one(bytes, pos, cp, consumed)) {
      out.codepoints.push_back(cp);
    } else {
      out.codepoints.push_back(kReplacementChar);
      ++out.invalid_sequences;
    }
    pos += consumed;
  }
  return out;
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append(out, cp);
  return out;
}

std::string sanitize(std::string_view bytes, std::size_t* invalid) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp = 0;
    std::size_t consumed = 0;
    if (decode_one(bytes, pos, cp, consumed)) {
      out.append(bytes.substr(pos, consumed));
    } else {
      append(out, kReplacementChar);
      if (invalid != nullptr) ++*invalid;
    }
    pos += consumed;
  }
  return out;
}

bool is_valid(std::string_view bytes) {
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    char32_t cp = 0;
    std::size_t consumed = 0;
    if (!decode_one(bytes, pos, cp, consumed)) return false;
    pos += consumed;
  }
  return true;
}

std::size_t length(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::uint32_t> offsets(std::string_view text) {
  std::vector<std::uint32_t> out;
  out.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  out.push_back(static_cast<std::uint32_t>(text.size()));
  return out;
}

}  // namespace lbpe::utf8
