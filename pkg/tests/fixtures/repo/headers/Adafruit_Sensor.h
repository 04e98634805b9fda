/* Unified sensor abstraction: every sensor driver reports sensor_t details
   and sensors_event_t readings (temperature, humidity, pressure, light ...). */
#ifndef _ADAFRUIT_SENSOR_H
#define _ADAFRUIT_SENSOR_H

#include <Arduino.h>

typedef enum {
  SENSOR_TYPE_ACCELEROMETER = (1),
  SENSOR_TYPE_MAGNETIC_FIELD = (2),
  SENSOR_TYPE_ORIENTATION = (3),
  SENSOR_TYPE_GYROSCOPE = (4),
  SENSOR_TYPE_LIGHT = (5),
  SENSOR_TYPE_PRESSURE = (6),
  SENSOR_TYPE_PROXIMITY = (8),
  SENSOR_TYPE_RELATIVE_HUMIDITY = (12),
  SENSOR_TYPE_AMBIENT_TEMPERATURE = (13),
  SENSOR_TYPE_VOLTAGE = (15),
  SENSOR_TYPE_CURRENT = (16)
} sensors_type_t;

typedef struct {
  int32_t version;
  int32_t sensor_id;
  int32_t type;
  int32_t timestamp;
  float temperature;
  float relative_humidity;
  float pressure;
  float light;
} sensors_event_t;

typedef struct {
  char name[12];
  int32_t version;
  int32_t sensor_id;
  int32_t type;
  float max_value;
  float min_value;
  float resolution;
  int32_t min_delay;
} sensor_t;

class Adafruit_Sensor {
public:
  Adafruit_Sensor() {}
  virtual ~Adafruit_Sensor() {}
  virtual void enableAutoRange(bool enabled) { (void)enabled; };
  virtual bool getEvent(sensors_event_t *) = 0;
  virtual void getSensor(sensor_t *) = 0;
  void printSensorDetails(void);
};

#endif
