/* QTRSensors - read Pololu QTR reflectance sensor arrays (analog and RC variants)
   for line following: calibrate() then readLineBlack() / readLineWhite(). */
#ifndef QTRSensors_h
#define QTRSensors_h

#include <stdint.h>

enum class QTRReadMode : uint8_t { Off, On, OnAndOff, OddEven, OddEvenAndOff, Manual };
enum class QTRType : uint8_t { Undefined, RC, Analog };

#define QTRNoEmitterPin 255
#define QTRMaxSensors 31

struct CalibrationData {
  bool initialized = false;
  uint16_t *minimum = nullptr;
  uint16_t *maximum = nullptr;
};

class QTRSensors {
public:
  void setTypeRC();
  void setTypeAnalog();
  void setSensorPins(const uint8_t *pins, uint8_t sensorCount);
  void setTimeout(uint16_t timeout);
  void setEmitterPin(uint8_t emitterPin);
  void emittersOn();
  void emittersOff();
  void calibrate(QTRReadMode mode = QTRReadMode::On);
  void resetCalibration();
  void read(uint16_t *sensorValues, QTRReadMode mode = QTRReadMode::On);
  void readCalibrated(uint16_t *sensorValues, QTRReadMode mode = QTRReadMode::On);
  uint16_t readLineBlack(uint16_t *sensorValues, QTRReadMode mode = QTRReadMode::On);
  uint16_t readLineWhite(uint16_t *sensorValues, QTRReadMode mode = QTRReadMode::On);
  CalibrationData calibrationOn;
  CalibrationData calibrationOff;
};

#endif
