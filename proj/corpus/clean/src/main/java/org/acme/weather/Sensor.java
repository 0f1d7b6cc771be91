package org.acme.weather;

public interface Sensor {
    int celsius();

    String station();
}
