package org.acme.weather;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class ForecasterTest {
    private Sensor sensor;
    private Forecaster forecaster;

    @Before
    public void setUp() {
        sensor = mock(Sensor.class);
        forecaster = new Forecaster(sensor);
    }

    @Test
    public void freezingBelowZero() {
        when(sensor.celsius()).thenReturn(-4);
        assertEquals("freezing", forecaster.outlook());
    }

    @Test
    public void mildInSpring() {
        when(sensor.celsius()).thenReturn(12);
        assertEquals("mild", forecaster.outlook());
    }

    @Test
    public void bannerShowsStation() {
        when(sensor.station()).thenReturn("Oslo");
        when(sensor.celsius()).thenReturn(25);
        assertEquals("Oslo 25", forecaster.banner());
    }
}
