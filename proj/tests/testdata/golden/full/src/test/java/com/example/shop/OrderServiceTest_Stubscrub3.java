package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class OrderServiceTest_Stubscrub3 {
    private static final String SKU = "A1";

    private Inventory inventory;
    private PriceService prices;
    private OrderService service;

    @Before
    public void setUp() {
        inventory = mock(Inventory.class);
        prices = mock(PriceService.class);
        service = new OrderService(inventory, prices);
        when(prices.currency()).thenReturn("EUR");
    }

    @Test
    public void describesItem() {
        when(inventory.warehouseOf(SKU)).thenReturn("North");
        assertEquals("A1@North EUR", service.describe(SKU));
    }
}
