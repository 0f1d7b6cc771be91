package com.example.shop;

import static org.junit.Assert.assertEquals;
import static org.junit.Assert.assertFalse;
import static org.junit.Assert.assertTrue;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class InventoryCheckTest {
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
    public void shipsExactStock() {
        when(inventory.stockOf("D4")).thenReturn(3);
        assertTrue(service.canShip("D4", 3));
    }

    @Test
    public void refusesEmptyStock() {
        when(inventory.stockOf("D4")).thenReturn(0);
        assertFalse(service.canShip("D4", 1));
    }

    @Test
    public void describesWarehouse() {
        when(inventory.warehouseOf("E5")).thenReturn("West");
        when(prices.currency()).thenReturn("GBP");
        assertEquals("E5@West GBP", service.describe("E5"));
    }

    @Test(expected = IllegalStateException.class)
    public void rejectsDiscontinued() {
        when(inventory.isDiscontinued("F6")).thenReturn(true);
        service.quote("F6", 1, mock(Customer.class));
    }
}
