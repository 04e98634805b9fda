/* Boards.h - pin capability macros for many board variants (Firmata support).
   Every board section defines digital/analog pin counts and the servo pin map. */
#ifndef Firmata_Boards_h
#define Firmata_Boards_h

#include <inttypes.h>

#ifndef MAX_SERVOS
#define MAX_SERVOS 0
#endif

// Arduino Duemilanove, Diecimila, and NG
#if defined(__AVR_ATmega168__) || defined(__AVR_ATmega328P__)
#define TOTAL_ANALOG_PINS       6
#define TOTAL_PINS              20
#define VERSION_BLINK_PIN       13
#define IS_PIN_DIGITAL(p)       ((p) >= 2 && (p) <= 19)
#define IS_PIN_ANALOG(p)        ((p) >= 14 && (p) < 14 + TOTAL_ANALOG_PINS)
#define IS_PIN_PWM(p)           digitalPinHasPWM(p)
#define IS_PIN_SERVO(p)         (IS_PIN_DIGITAL(p) && (p) - 2 < MAX_SERVOS)
#define PIN_TO_DIGITAL(p)       (p)
#define PIN_TO_ANALOG(p)        ((p) - 14)
#define PIN_TO_SERVO(p)         ((p) - 2)

// Arduino Mega
#elif defined(__AVR_ATmega1280__) || defined(__AVR_ATmega2560__)
#define TOTAL_ANALOG_PINS       16
#define TOTAL_PINS              70
#define VERSION_BLINK_PIN       13
#define IS_PIN_DIGITAL(p)       ((p) >= 2 && (p) < TOTAL_PINS)
#define IS_PIN_SERVO(p)         ((p) >= 2 && (p) - 2 < MAX_SERVOS)
#define PIN_TO_SERVO(p)         ((p) - 2)

// Arduino Leonardo
#elif defined(__AVR_ATmega32U4__)
#define TOTAL_ANALOG_PINS       12
#define TOTAL_PINS              30
#define IS_PIN_SERVO(p)         ((p) >= 0 && (p) < MAX_SERVOS)
#define PIN_TO_SERVO(p)         (p)

// Teensy 3.x
#elif defined(__MK20DX128__) || defined(__MK20DX256__)
#define TOTAL_ANALOG_PINS       14
#define TOTAL_PINS              38
#define IS_PIN_SERVO(p)         ((p) >= 0 && (p) < MAX_SERVOS)
#define PIN_TO_SERVO(p)         (p)

// Arduino Due
#elif defined(__SAM3X8E__)
#define TOTAL_ANALOG_PINS       12
#define TOTAL_PINS              66
#define IS_PIN_SERVO(p)         ((p) >= 2 && (p) - 2 < MAX_SERVOS)
#define PIN_TO_SERVO(p)         ((p) - 2)

#else
#error "Please edit Boards.h with a hardware abstraction for this board"
#endif

// the servo library can only drive pins that have a timer channel
#if !defined(IS_PIN_SERVO)
#define IS_PIN_SERVO(p) 0
#endif

#endif
