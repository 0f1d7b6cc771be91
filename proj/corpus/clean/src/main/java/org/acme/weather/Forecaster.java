package org.acme.weather;

public class Forecaster {
    private final Sensor sensor;

    public Forecaster(Sensor sensor) {
        this.sensor = sensor;
    }

    public String outlook() {
        int t = sensor.celsius();
        if (t < 0) {
            return "freezing";
        } else if (t < 20) {
            return "mild";
        }
        return "warm";
    }

    public String banner() {
        return sensor.station() + " " + sensor.celsius();
    }
}
