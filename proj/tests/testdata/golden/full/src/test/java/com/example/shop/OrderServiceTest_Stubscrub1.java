package com.example.shop;

import static org.junit.Assert.assertTrue;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class OrderServiceTest_Stubscrub1 {
    private static final String SKU = "A1";

    private Inventory inventory;
    private PriceService prices;
    private OrderService service;

    @Before
    public void setUp() {
        inventory = mock(Inventory.class);
        prices = mock(PriceService.class);
        service = new OrderService(inventory, prices);
        when(inventory.stockOf(SKU)).thenReturn(5);
    }

    @Test
    public void shipsWhenStockSuffices() {
        assertTrue(service.canShip(SKU, 5));
    }
}
