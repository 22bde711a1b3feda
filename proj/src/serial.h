#ifndef MINSINK_SRC_SERIAL_H_
#define MINSINK_SRC_SERIAL_H_

#include <cstdint>
#include <cstring>
#include <vector>

namespace minsink::serial {

// Raw little-endian byte images; the cache format is host-endian and the
// header check in cuetree.cc rejects big-endian hosts.
template <typename T>
void Put(std::vector<char>& out, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
void PutVec(std::vector<char>& out, const std::vector<T>& v) {
  Put<uint64_t>(out, v.size());
  const char* p = reinterpret_cast<const char*>(v.data());
  out.insert(out.end(), p, p + v.size() * sizeof(T));
}

template <typename T>
T Get(const char*& in) {
  T v;
  std::memcpy(&v, in, sizeof(T));
  in += sizeof(T);
  return v;
}

template <typename T>
std::vector<T> GetVec(const char*& in) {
  const uint64_t size = Get<uint64_t>(in);
  std::vector<T> v(size);
  if (size > 0) std::memcpy(v.data(), in, size * sizeof(T));
  in += size * sizeof(T);
  return v;
}

}  // namespace minsink::serial

#endif  // MINSINK_SRC_SERIAL_H_
