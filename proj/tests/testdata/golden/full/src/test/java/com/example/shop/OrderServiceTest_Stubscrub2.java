package com.example.shop;

import static org.junit.Assert.assertFalse;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class OrderServiceTest_Stubscrub2 {
    private static final String SKU = "A1";

    private Inventory inventory;
    private PriceService prices;
    private OrderService service;

    @Before
    public void setUp() {
        inventory = mock(Inventory.class);
        prices = mock(PriceService.class);
        service = new OrderService(inventory, prices);
    }

    @Test
    public void refusesWhenStockIsShort() {
        when(inventory.stockOf(SKU)).thenReturn(1);
        assertFalse(service.canShip(SKU, 2));
    }
}
