/* Firmata - generic protocol for controlling the board from host software over serial. */
#ifndef Firmata_h
#define Firmata_h

#include "Boards.h"

#define FIRMATA_PROTOCOL_MAJOR_VERSION 2
#define FIRMATA_PROTOCOL_MINOR_VERSION 5
#define MAX_DATA_BYTES 64
#define DIGITAL_MESSAGE 0x90
#define ANALOG_MESSAGE 0xE0
#define REPORT_ANALOG 0xC0
#define REPORT_DIGITAL 0xD0
#define SET_PIN_MODE 0xF4
#define SERVO_CONFIG 0x70
#define PIN_MODE_SERVO 0x04

class FirmataClass {
public:
  FirmataClass();
  void begin(long);
  void printVersion(void);
  void printFirmwareVersion(void);
  int available(void);
  void processInput(void);
  void sendAnalog(byte pin, int value);
  void sendDigitalPort(byte portNumber, int portData);
  void sendString(const char *string);
  void attach(uint8_t command, void (*newFunction)(uint8_t, int));
  void setPinMode(byte pin, byte config);
};

extern FirmataClass Firmata;

#endif
