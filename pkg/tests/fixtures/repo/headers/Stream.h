/* Stream - base class for character and binary streams (serial ports, I2C, files). */
#ifndef Stream_h
#define Stream_h

#include <inttypes.h>
#include "Print.h"

class Stream : public Print {
protected:
  unsigned long _timeout;
  unsigned long _startMillis;
public:
  virtual int available() = 0;
  virtual int read() = 0;
  virtual int peek() = 0;
  Stream() { _timeout = 1000; }
  void setTimeout(unsigned long timeout);
  unsigned long getTimeout(void) { return _timeout; }
  bool find(char *target);
  long parseInt();
  float parseFloat();
  size_t readBytes(char *buffer, size_t length);
  size_t readBytesUntil(char terminator, char *buffer, size_t length);
};

#endif
